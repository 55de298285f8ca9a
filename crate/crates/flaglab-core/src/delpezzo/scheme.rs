//! The blown-up point scheme of an irreducible hyperplane section.
//!
//! For a normalized matrix `M` the scheme is the common zero locus of the
//! three 2×2 minors of the 2×3 matrix with rows `(x0,x1,x2)` and `M·x`.
//! These are three conics in the plane and the scheme has length 3 whenever
//! the surface is irreducible. The computation is resultant-based: project to
//! a coordinate axis on a chart, take gcds, lift each candidate and measure
//! its local multiplicity by truncated normal forms. Points live in `Q` or in
//! a quadratic extension, reported symbolically by the minimal polynomial.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{classify, DelPezzoError, DelPezzoKind, DelPezzoMatrix};
use crate::exact::{rat, Matrix, Poly, Rational};

/// A closed point of the scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SchemePoint {
    Rational { coords: [Rational; 3], multiplicity: usize },
    /// A Galois-conjugate pair: coordinates are `a + b·τ` with `τ` a root of
    /// the quadratic `min_poly`. Each of the two conjugate points is simple.
    ConjugatePair { min_poly: Poly, coords: [(Rational, Rational); 3] },
}

impl SchemePoint {
    pub fn total_multiplicity(&self) -> usize {
        match self {
            SchemePoint::Rational { multiplicity, .. } => *multiplicity,
            SchemePoint::ConjugatePair { .. } => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointScheme {
    pub points: Vec<SchemePoint>,
}

impl PointScheme {
    pub fn total_length(&self) -> usize {
        self.points.iter().map(|p| p.total_multiplicity()).sum()
    }

    /// Multiplicities sorted descending, with a conjugate pair contributing
    /// `1, 1`: `[1,1,1]`, `[2,1]` or `[3]`.
    pub fn multiplicity_pattern(&self) -> Vec<usize> {
        let mut v = Vec::new();
        for p in &self.points {
            match p {
                SchemePoint::Rational { multiplicity, .. } => v.push(*multiplicity),
                SchemePoint::ConjugatePair { .. } => v.extend([1, 1]),
            }
        }
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }
}

/// The zero scheme of the three minor conics, with multiplicities summing
/// to 3. Errors on reducible input, where the locus contains a line.
pub fn blown_up_points(m: &DelPezzoMatrix) -> Result<PointScheme, DelPezzoError> {
    let class = classify(m)?;
    match class.kind {
        DelPezzoKind::ReducibleConicSmooth | DelPezzoKind::ReducibleConicDegenerate => {
            return Err(DelPezzoError::Reducible)
        }
        _ => {}
    }
    let conics = minor_conics(m.entries());
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e3779b97f4a7c15);
    let mut transforms = vec![Matrix::identity(3)];
    for _ in 0..24 {
        transforms.push(random_unimodular(&mut rng));
    }
    let mut last_err = String::new();
    for p in &transforms {
        match scheme_in_transformed_coordinates(&conics, p) {
            Ok(points) => return Ok(PointScheme { points }),
            Err(e) => last_err = e,
        }
    }
    Err(DelPezzoError::SchemeFailure(last_err))
}

/// Ternary quadratic form as a symmetric 3×3 matrix: `Q(x) = xᵗ S x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conic {
    s: Matrix,
}

impl Conic {
    fn from_symmetric(s: Matrix) -> Self {
        Conic { s }
    }

    fn is_zero(&self) -> bool {
        self.s.is_zero()
    }

    fn eval(&self, x: &[Rational; 3]) -> Rational {
        let v = self.s.mul_vec(&x.to_vec()).expect("shape");
        x.iter().zip(&v).map(|(a, b)| a * b).sum()
    }

    /// substitute `x -> P x`
    fn transform(&self, p: &Matrix) -> Conic {
        let pt = p.transpose();
        Conic::from_symmetric(pt.mul(&self.s).unwrap().mul(p).unwrap())
    }

    /// chart x0 = 1, variables (u, v) = (x1, x2)
    fn dehomogenize(&self) -> BiPoly {
        let mut b = BiPoly::zero();
        for i in 0..3 {
            for j in 0..3 {
                let (du, dv) = (usize::from(i == 1) + usize::from(j == 1),
                                usize::from(i == 2) + usize::from(j == 2));
                b.add_term(du as u32, dv as u32, self.s[(i, j)].clone());
            }
        }
        b
    }

    /// restriction to the line x0 = 0: binary quadratic `a x1² + b x1x2 + c x2²`
    fn at_infinity(&self) -> (Rational, Rational, Rational) {
        (
            self.s[(1, 1)].clone(),
            &self.s[(1, 2)] + &self.s[(2, 1)],
            self.s[(2, 2)].clone(),
        )
    }
}

/// The three minor conics of `[(x0,x1,x2); M·x]`, as symmetric matrices.
pub(crate) fn minor_conics(m: &Matrix) -> [Conic; 3] {
    // minor (i,j): x_i (Mx)_j - x_j (Mx)_i
    let minor = |i: usize, j: usize| {
        let mut s = Matrix::zero(3, 3);
        for k in 0..3 {
            // x_i * m[j][k] x_k  contributes to S[i][k], S[k][i] halves
            let half = rat(1, 2);
            let a = &m[(j, k)] * &half;
            s[(i, k)] += a.clone();
            s[(k, i)] += a;
            let b = &m[(i, k)] * &half;
            s[(j, k)] -= b.clone();
            s[(k, j)] -= b;
        }
        Conic::from_symmetric(s)
    };
    [minor(0, 1), minor(0, 2), minor(1, 2)]
}

fn random_unimodular(rng: &mut ChaCha8Rng) -> Matrix {
    // product of elementary shears is unimodular and stays small
    let mut p = Matrix::identity(3);
    for _ in 0..4 {
        let i = rng.gen_range(0..3);
        let mut j = rng.gen_range(0..3);
        if i == j {
            j = (j + 1) % 3;
        }
        let c = rat(rng.gen_range(-2..=2i64), 1);
        let mut e = Matrix::identity(3);
        e[(i, j)] = c;
        p = p.mul(&e).unwrap();
    }
    p
}

fn scheme_in_transformed_coordinates(
    conics: &[Conic; 3],
    p: &Matrix,
) -> Result<Vec<SchemePoint>, String> {
    let tq: Vec<Conic> = conics.iter().map(|c| c.transform(p)).collect();
    if tq.iter().all(|c| c.is_zero()) {
        return Err("all minors vanish identically".into());
    }

    // no point may sit on the chart boundary x0 = 0
    if has_common_infinity_root(&tq) {
        return Err("candidate on the line at infinity".into());
    }

    let affine: Vec<BiPoly> = tq.iter().map(|c| c.dehomogenize()).collect();

    // eliminate v: pool the pairwise resultants and any v-free equations
    let mut pool: Vec<Poly> = Vec::new();
    for q in &affine {
        if q.deg_v() == 0 && !q.is_zero() {
            pool.push(q.coeff_of_v_power(0));
        }
    }
    for a in 0..3 {
        for b in a + 1..3 {
            if affine[a].deg_v() >= 1 && affine[b].deg_v() >= 1 {
                let r = resultant_v(&affine[a], &affine[b]);
                if !r.is_zero() {
                    pool.push(r);
                }
            }
        }
    }
    if pool.is_empty() {
        return Err("all eliminants vanish identically".into());
    }
    let mut g = pool[0].clone();
    for q in &pool[1..] {
        g = g.gcd(q);
    }
    if g.degree() == 0 {
        return Err("eliminant has no roots but the scheme is nonempty".into());
    }

    let (rational_roots, rest) = g.split_rational_roots();
    let mut points = Vec::new();
    let mut total = 0usize;

    for (u0, _) in &rational_roots {
        for v0 in solve_fiber_rational(&affine, u0)? {
            let mult = local_multiplicity(&affine, u0, &v0);
            if mult == 0 {
                continue; // spurious projection root
            }
            let coords = map_back(p, &[Rational::one(), u0.clone(), v0.clone()]);
            total += mult;
            points.push(SchemePoint::Rational { coords, multiplicity: mult });
        }
    }

    // conjugate pairs from irreducible quadratic factors of the eliminant
    let mut rest_sf = Poly::one();
    for (f, _) in rest.squarefree_decomposition() {
        rest_sf = rest_sf.mul(&f);
    }
    let quad_factors = quadratic_factors(&rest_sf)?;
    for mq in quad_factors {
        if let Some(coords) = solve_fiber_quadratic(&affine, &mq)? {
            let coords = map_back_quadratic(p, &coords, &mq);
            total += 2;
            points.push(SchemePoint::ConjugatePair { min_poly: mq, coords });
        }
    }

    if total != 3 {
        return Err(format!("scheme length {total} != 3"));
    }
    sort_points(&mut points);
    Ok(points)
}

fn sort_points(points: &mut [SchemePoint]) {
    points.sort_by(|a, b| format!("{a:?}").cmp(&format!("{b:?}")));
}

fn has_common_infinity_root(conics: &[Conic]) -> bool {
    let forms: Vec<(Rational, Rational, Rational)> =
        conics.iter().map(|c| c.at_infinity()).collect();
    let nonzero: Vec<&(Rational, Rational, Rational)> = forms
        .iter()
        .filter(|(a, b, c)| !(a.is_zero() && b.is_zero() && c.is_zero()))
        .collect();
    if nonzero.len() < forms.len() {
        return true; // a minor vanishes on the whole line
    }
    // root (1:0) <=> all leading coefficients vanish
    if nonzero.iter().all(|(a, _, _)| a.is_zero()) {
        return true;
    }
    // other roots: gcd of the dehomogenized binary forms
    let mut g: Option<Poly> = None;
    for (a, b, c) in &forms {
        let f = Poly::new(vec![c.clone(), b.clone(), a.clone()]);
        g = Some(match g {
            None => f,
            Some(prev) => prev.gcd(&f),
        });
    }
    g.map(|g| g.degree() > 0).unwrap_or(true)
}

/// Solve the fiber over a rational `u0`: rational `v` with all conics zero.
fn solve_fiber_rational(affine: &[BiPoly], u0: &Rational) -> Result<Vec<Rational>, String> {
    let mut g: Option<Poly> = None;
    for q in affine {
        let f = q.eval_u(u0);
        if f.is_zero() {
            continue;
        }
        g = Some(match g {
            None => f,
            Some(prev) => prev.gcd(&f),
        });
    }
    let Some(g) = g else {
        return Err("a whole fiber line lies in the scheme".into());
    };
    if g.degree() == 0 {
        return Ok(vec![]); // spurious root of the eliminant
    }
    Ok(g.rational_roots().into_iter().map(|(r, _)| r).collect())
}

/// Local multiplicity of the scheme at the affine point `(u0, v0)`:
/// `dim Q[s,t] / (I + m^N)` stabilized over N, computed from truncated
/// Macaulay-style relation matrices.
fn local_multiplicity(affine: &[BiPoly], u0: &Rational, v0: &Rational) -> usize {
    let shifted: Vec<BiPoly> = affine.iter().map(|q| q.shift(u0, v0)).collect();
    if shifted.iter().any(|q| !q.coeff(0, 0).is_zero()) {
        return 0; // not on the scheme
    }
    let mut prev = None;
    for n in 1..=6u32 {
        let dim = truncated_quotient_dim(&shifted, n);
        if prev == Some(dim) {
            return dim;
        }
        prev = Some(dim);
    }
    prev.unwrap()
}

fn truncated_quotient_dim(gens: &[BiPoly], n: u32) -> usize {
    // monomials of total degree < n
    let mut monos = Vec::new();
    for d in 0..n {
        for i in 0..=d {
            monos.push((i, d - i));
        }
    }
    let index: BTreeMap<(u32, u32), usize> =
        monos.iter().enumerate().map(|(k, &m)| (m, k)).collect();
    let mut rows = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        for d in 0..n {
            for i in 0..=d {
                let shifted = g.mul_mono(i, d - i);
                let mut row = vec![Rational::zero(); monos.len()];
                let mut nonzero = false;
                for ((a, b), c) in shifted.terms() {
                    if a + b < n {
                        row[index[&(*a, *b)]] = c.clone();
                        nonzero = true;
                    }
                }
                if nonzero {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        return monos.len();
    }
    monos.len() - Matrix::from_rows(rows).rank()
}

/// Split a squarefree, rational-root-free polynomial into quadratic factors.
/// Degrees 0 and 2 are immediate; for our schemes nothing else can occur, and
/// anything else is reported as a failure of the current chart.
fn quadratic_factors(f: &Poly) -> Result<Vec<Poly>, String> {
    match f.degree() {
        0 => Ok(vec![]),
        2 => Ok(vec![f.monic()]),
        d => Err(format!("unexpected eliminant factor of degree {d}")),
    }
}

/// Solve the fiber over the class of `u` in `K = Q[u]/(mq)`; the common root
/// in `v` must be unique and linear. Returns projective coordinates
/// `(1, τ, v0)` as pairs `a + b·τ`, or `None` when the factor is spurious.
fn solve_fiber_quadratic(
    affine: &[BiPoly],
    mq: &Poly,
) -> Result<Option<[(Rational, Rational); 3]>, String> {
    let field = QuadField::new(mq);
    let tau = QF { a: Rational::zero(), b: Rational::one() };
    let mut g: Option<Vec<QF>> = None;
    for q in affine {
        let f = q.eval_u_ext(&field, &tau);
        if poly_ext_is_zero(&f) {
            continue;
        }
        g = Some(match g {
            None => f,
            Some(prev) => poly_ext_gcd(&field, &prev, &f),
        });
    }
    let Some(g) = g else {
        return Err("fiber over quadratic point is positive dimensional".into());
    };
    match g.len() {
        0 | 1 => Ok(None), // spurious
        2 => {
            // monic linear: v + c => v0 = -c
            let inv = field.inv(&g[1]);
            let c = field.mul(&g[0], &inv);
            let v0 = field.neg(&c);
            Ok(Some([
                (Rational::one(), Rational::zero()),
                (Rational::zero(), Rational::one()),
                (v0.a, v0.b),
            ]))
        }
        _ => Err("two points over one quadratic abscissa".into()),
    }
}

fn map_back(p: &Matrix, x: &[Rational; 3]) -> [Rational; 3] {
    let v = p.mul_vec(&x.to_vec()).expect("shape");
    let prim = crate::exact::primitive_direction(&v).expect("scheme point is nonzero");
    [prim[0].clone(), prim[1].clone(), prim[2].clone()]
}

fn map_back_quadratic(
    p: &Matrix,
    coords: &[(Rational, Rational); 3],
    _mq: &Poly,
) -> [(Rational, Rational); 3] {
    let mut out = [(Rational::zero(), Rational::zero()),
                   (Rational::zero(), Rational::zero()),
                   (Rational::zero(), Rational::zero())];
    for i in 0..3 {
        let mut a = Rational::zero();
        let mut b = Rational::zero();
        for j in 0..3 {
            a += &p[(i, j)] * &coords[j].0;
            b += &p[(i, j)] * &coords[j].1;
        }
        out[i] = (a, b);
    }
    out
}

// ---------------------------------------------------------------------------
// bivariate polynomials over Q
// ---------------------------------------------------------------------------

/// Polynomial in `Q[u, v]`, sparse terms keyed by `(deg_u, deg_v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct BiPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BiPoly {
    fn zero() -> Self {
        BiPoly { terms: BTreeMap::new() }
    }

    fn add_term(&mut self, du: u32, dv: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((du, dv)).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(du, dv));
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn terms(&self) -> &BTreeMap<(u32, u32), Rational> {
        &self.terms
    }

    fn coeff(&self, du: u32, dv: u32) -> Rational {
        self.terms.get(&(du, dv)).cloned().unwrap_or_else(Rational::zero)
    }

    fn deg_v(&self) -> u32 {
        self.terms.keys().map(|&(_, dv)| dv).max().unwrap_or(0)
    }

    /// coefficient of `v^k` as a polynomial in `u`
    fn coeff_of_v_power(&self, k: u32) -> Poly {
        let maxu = self.terms.keys().map(|&(du, _)| du).max().unwrap_or(0);
        let mut coeffs = vec![Rational::zero(); maxu as usize + 1];
        for (&(du, dv), c) in &self.terms {
            if dv == k {
                coeffs[du as usize] = c.clone();
            }
        }
        Poly::new(coeffs)
    }

    /// substitute a rational value for u; polynomial in v
    fn eval_u(&self, u0: &Rational) -> Poly {
        let maxv = self.deg_v();
        let mut coeffs = vec![Rational::zero(); maxv as usize + 1];
        for (&(du, dv), c) in &self.terms {
            let mut p = c.clone();
            for _ in 0..du {
                p *= u0;
            }
            coeffs[dv as usize] += p;
        }
        Poly::new(coeffs)
    }

    /// substitute an element of a quadratic extension for u
    fn eval_u_ext(&self, field: &QuadField, u0: &QF) -> Vec<QF> {
        let maxv = self.deg_v();
        let mut coeffs = vec![QF::zero(); maxv as usize + 1];
        for (&(du, dv), c) in &self.terms {
            let mut p = QF { a: c.clone(), b: Rational::zero() };
            for _ in 0..du {
                p = field.mul(&p, u0);
            }
            coeffs[dv as usize] = field.add(&coeffs[dv as usize], &p);
        }
        poly_ext_trim(coeffs)
    }

    /// translate coordinates so (u0, v0) moves to the origin
    fn shift(&self, u0: &Rational, v0: &Rational) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(du, dv), c) in &self.terms {
            // (s + u0)^du (t + v0)^dv
            for i in 0..=du {
                for j in 0..=dv {
                    let mut coeff = c.clone()
                        * rat(binom(du, i), 1)
                        * rat(binom(dv, j), 1);
                    for _ in 0..(du - i) {
                        coeff *= u0;
                    }
                    for _ in 0..(dv - j) {
                        coeff *= v0;
                    }
                    out.add_term(i, j, coeff);
                }
            }
        }
        out
    }

    fn mul_mono(&self, du: u32, dv: u32) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(a, b), c) in &self.terms {
            out.add_term(a + du, b + dv, c.clone());
        }
        out
    }
}

fn binom(n: u32, k: u32) -> i64 {
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) as i64 / (i + 1) as i64;
    }
    r
}

/// `Res_v` of two bivariate polynomials with positive v-degree, as the
/// Sylvester determinant over `Q[u]`.
fn resultant_v(f: &BiPoly, g: &BiPoly) -> Poly {
    let m = f.deg_v() as usize;
    let n = g.deg_v() as usize;
    let size = m + n;
    let fc: Vec<Poly> = (0..=m).map(|k| f.coeff_of_v_power((m - k) as u32)).collect();
    let gc: Vec<Poly> = (0..=n).map(|k| g.coeff_of_v_power((n - k) as u32)).collect();
    let mut rows = vec![vec![Poly::zero(); size]; size];
    for i in 0..n {
        for (k, c) in fc.iter().enumerate() {
            rows[i][i + k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in gc.iter().enumerate() {
            rows[n + i][i + k] = c.clone();
        }
    }
    det_poly(rows)
}

fn det_poly(m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, p)| p.clone()).collect()
            })
            .collect();
        let term = m[0][j].mul(&det_poly(minor));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

// ---------------------------------------------------------------------------
// quadratic extension arithmetic
// ---------------------------------------------------------------------------

/// `Q[τ]/(τ² + p τ + q)` for a monic irreducible quadratic.
pub(crate) struct QuadField {
    p: Rational,
    q: Rational,
}

/// element `a + b τ`
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct QF {
    a: Rational,
    b: Rational,
}

impl QF {
    fn zero() -> Self {
        QF { a: Rational::zero(), b: Rational::zero() }
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl QuadField {
    fn new(min_poly: &Poly) -> Self {
        assert_eq!(min_poly.degree(), 2);
        let monic = min_poly.monic();
        QuadField { p: monic.coeff(1), q: monic.coeff(0) }
    }

    fn add(&self, x: &QF, y: &QF) -> QF {
        QF { a: &x.a + &y.a, b: &x.b + &y.b }
    }

    fn neg(&self, x: &QF) -> QF {
        QF { a: -x.a.clone(), b: -x.b.clone() }
    }

    fn mul(&self, x: &QF, y: &QF) -> QF {
        // τ² = -pτ - q
        let bd = &x.b * &y.b;
        QF {
            a: &x.a * &y.a - &self.q * &bd,
            b: &x.a * &y.b + &x.b * &y.a - &self.p * &bd,
        }
    }

    fn inv(&self, x: &QF) -> QF {
        assert!(!x.is_zero());
        // (a + bτ)(c + dτ) = 1: solve the 2x2 linear system
        let det = &x.a * (&x.a - &self.p * &x.b) + &self.q * &x.b * &x.b;
        assert!(!det.is_zero(), "minimal polynomial not irreducible");
        let inv_det = Rational::one() / det;
        QF {
            a: (&x.a - &self.p * &x.b) * &inv_det,
            b: -x.b.clone() * &inv_det,
        }
    }
}

fn poly_ext_trim(mut coeffs: Vec<QF>) -> Vec<QF> {
    while coeffs.last().map_or(false, |c| c.is_zero()) {
        coeffs.pop();
    }
    coeffs
}

fn poly_ext_is_zero(f: &[QF]) -> bool {
    f.is_empty()
}

fn poly_ext_gcd(field: &QuadField, f: &[QF], g: &[QF]) -> Vec<QF> {
    let mut a = f.to_vec();
    let mut b = g.to_vec();
    while !b.is_empty() {
        let r = poly_ext_rem(field, &a, &b);
        a = b;
        b = r;
    }
    // monic normalization
    if let Some(last) = a.last().cloned() {
        let inv = field.inv(&last);
        for c in &mut a {
            *c = field.mul(c, &inv);
        }
    }
    a
}

fn poly_ext_rem(field: &QuadField, f: &[QF], g: &[QF]) -> Vec<QF> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    let lead_inv = field.inv(g.last().unwrap());
    while r.len() >= g.len() && !r.is_empty() {
        let shift = r.len() - g.len();
        let factor = field.mul(r.last().unwrap(), &lead_inv);
        for (k, gc) in g.iter().enumerate() {
            let sub = field.mul(&factor, gc);
            r[shift + k] = field.add(&r[shift + k], &field.neg(&sub));
        }
        r = poly_ext_trim(r);
        if r.len() <= dg {
            break;
        }
    }
    r
}
