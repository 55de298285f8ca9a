//! Self-dual instanton monads on the flag threefold.
//!
//! A charge-`k` monad is a complex
//!
//! ```text
//! 0 -> H1⊗O(-h1) ⊕ H2⊗O(-h2) --A--> W⊗O --AᵗJ--> H1ˇ⊗O(h1) ⊕ H2ˇ⊗O(h2) -> 0
//! ```
//!
//! with `dim W = 4k+2`, `J` a non-degenerate skew form on `W`, and
//! `AᵗJA = 0` identically on `F`. The middle cohomology is a rank-2 bundle
//! with `c1 = 0`, `c2 = k·h1h2`; at a point `p` its fiber is `U_p°/U_p` for
//! `U_p` the column span of `A(p)`. Restricted to a smooth conic the bundle
//! splits as `O(-s) ⊕ O(s)` with `s = dim(U_p° ∩ U_q)` for any two points
//! `p, q` spanning the conic; an independent graded computation of the
//! sections of the restricted display recovers the same `s`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::exact::{annihilator, rat, rat_to_string, ExactError, Matrix, Rational, Subspace};
use crate::graded::{basis, line_bundle_cohomology, multiply_forms, BigradedForm, Mono};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MonadError {
    #[error("charge must be >= 1, got {0}")]
    BadCharge(i64),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("J must be skew-symmetric")]
    NotSkew,
    #[error("J is singular")]
    SingularJ,
    #[error("point does not lie on the flag threefold")]
    NotOnFlag,
    #[error("zero coordinates in projective point")]
    ZeroPoint,
    #[error("points are aligned (equal image under a projection)")]
    AlignedPoints,
    #[error("the conic through the points is singular")]
    SingularConic,
    #[error("fiber is degenerate at the point: rank {0} < {1}")]
    DegenerateFiber(usize, usize),
    #[error("negative twist ({0},{1}) outside the validity range")]
    NegativeTwist(i64, i64),
    #[error("monad data fails AᵗJA = 0 on the conic")]
    NotComplexOnConic,
    #[error("section pattern on the conic is inconsistent: {0}")]
    InconsistentSections(String),
    #[error("search exhausted after {attempts} attempts ({failures})")]
    SearchExhausted { attempts: usize, failures: String },
    #[error("invalid monad file: {0}")]
    BadFile(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnSide {
    X,
    Y,
}

/// A point of `F`: a pair of projective triples with `x·y = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagPoint {
    x: [Rational; 3],
    y: [Rational; 3],
}

impl FlagPoint {
    pub fn new(x: [Rational; 3], y: [Rational; 3]) -> Result<Self, MonadError> {
        if x.iter().all(|c| c.is_zero()) || y.iter().all(|c| c.is_zero()) {
            return Err(MonadError::ZeroPoint);
        }
        let dot: Rational = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        if !dot.is_zero() {
            return Err(MonadError::NotOnFlag);
        }
        Ok(FlagPoint { x, y })
    }

    pub fn from_i64(x: [i64; 3], y: [i64; 3]) -> Result<Self, MonadError> {
        FlagPoint::new(x.map(|c| rat(c, 1)), y.map(|c| rat(c, 1)))
    }

    pub fn x(&self) -> &[Rational; 3] {
        &self.x
    }

    pub fn y(&self) -> &[Rational; 3] {
        &self.y
    }

    pub fn x_display(&self) -> String {
        proj_display(&self.x)
    }

    pub fn y_display(&self) -> String {
        proj_display(&self.y)
    }
}

pub fn proj_display(v: &[Rational; 3]) -> String {
    let prim = crate::exact::primitive_direction(v).expect("projective point is nonzero");
    format!("{}:{}:{}", rat_to_string(&prim[0]), rat_to_string(&prim[1]), rat_to_string(&prim[2]))
}

/// Linear parametrization of a smooth conic: `x(s,t) = X·(s,t)ᵗ`,
/// `y(s,t) = Y·(s,t)ᵗ` with `x(s,t)·y(s,t) = 0` identically and both 3×2
/// coefficient matrices of rank 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConicParam {
    x_param: [[Rational; 2]; 3],
    y_param: [[Rational; 2]; 3],
}

impl ConicParam {
    pub fn new(x_param: [[Rational; 2]; 3], y_param: [[Rational; 2]; 3]) -> Result<Self, MonadError> {
        let col = |m: &[[Rational; 2]; 3], j: usize| -> [Rational; 3] {
            [m[0][j].clone(), m[1][j].clone(), m[2][j].clone()]
        };
        let dot = |a: &[Rational; 3], b: &[Rational; 3]| -> Rational {
            a.iter().zip(b).map(|(x, y)| x * y).sum()
        };
        let (x0, x1) = (col(&x_param, 0), col(&x_param, 1));
        let (y0, y1) = (col(&y_param, 0), col(&y_param, 1));
        // x(s,t)·y(s,t) = s²(x0·y0) + st(x0·y1 + x1·y0) + t²(x1·y1)
        if !dot(&x0, &y0).is_zero()
            || !(dot(&x0, &y1) + dot(&x1, &y0)).is_zero()
            || !dot(&x1, &y1).is_zero()
        {
            return Err(MonadError::Shape("parametrization violates the flag quadric".into()));
        }
        for m in [&x_param, &y_param] {
            let rows: Vec<Vec<Rational>> = m.iter().map(|r| r.to_vec()).collect();
            if Matrix::from_rows(rows).rank() != 2 {
                return Err(MonadError::SingularConic);
            }
        }
        Ok(ConicParam { x_param, y_param })
    }

    pub fn x_param(&self) -> &[[Rational; 2]; 3] {
        &self.x_param
    }

    pub fn y_param(&self) -> &[[Rational; 2]; 3] {
        &self.y_param
    }

    /// The point at parameter value `(s, t)`.
    pub fn at(&self, s: &Rational, t: &Rational) -> Result<FlagPoint, MonadError> {
        let eval = |m: &[[Rational; 2]; 3]| -> [Rational; 3] {
            [
                &m[0][0] * s + &m[0][1] * t,
                &m[1][0] * s + &m[1][1] * t,
                &m[2][0] * s + &m[2][1] * t,
            ]
        };
        FlagPoint::new(eval(&self.x_param), eval(&self.y_param))
    }
}

/// The unique smooth conic through two non-aligned points, parametrized so
/// that `(s:t) = (1:0)` is `p` and `(0:1)` is `q`. Errors when the points are
/// aligned or when the induced (point, line) pair lies on `F`, i.e. the conic
/// through them is singular.
pub fn conic_through(p: &FlagPoint, q: &FlagPoint) -> Result<ConicParam, MonadError> {
    if proportional(&p.x, &q.x) || proportional(&p.y, &q.y) {
        return Err(MonadError::AlignedPoints);
    }
    let c1: Rational = p.x.iter().zip(&q.y).map(|(a, b)| a * b).sum();
    let c2: Rational = q.x.iter().zip(&p.y).map(|(a, b)| a * b).sum();
    if c1.is_zero() || c2.is_zero() {
        return Err(MonadError::SingularConic);
    }
    let x_param = [
        [p.x[0].clone(), q.x[0].clone()],
        [p.x[1].clone(), q.x[1].clone()],
        [p.x[2].clone(), q.x[2].clone()],
    ];
    // y(s,t) = s·c1·y_p - t·c2·y_q keeps x(s,t)·y(s,t) = 0
    let y_param = [
        [&c1 * &p.y[0], -(&c2 * &q.y[0])],
        [&c1 * &p.y[1], -(&c2 * &q.y[1])],
        [&c1 * &p.y[2], -(&c2 * &q.y[2])],
    ];
    ConicParam::new(canonical_param(x_param), canonical_param(y_param))
}

fn proportional(a: &[Rational; 3], b: &[Rational; 3]) -> bool {
    // rank of the 2x3 stack is < 2
    for i in 0..3 {
        for j in i + 1..3 {
            if &a[i] * &b[j] != &a[j] * &b[i] {
                return false;
            }
        }
    }
    true
}

/// Scale a 3×2 parametrization matrix to primitive integers with positive
/// first nonzero entry (row-major scan).
fn canonical_param(m: [[Rational; 2]; 3]) -> [[Rational; 2]; 3] {
    let flat: Vec<Rational> = m.iter().flat_map(|r| r.iter().cloned()).collect();
    let prim = crate::exact::primitive_direction(&flat).expect("parametrization is nonzero");
    [
        [prim[0].clone(), prim[1].clone()],
        [prim[2].clone(), prim[3].clone()],
        [prim[4].clone(), prim[5].clone()],
    ]
}

/// Monad data: the symplectic form `J` on `W` and the `2k` columns of `A`,
/// each an element of `W` with linear-form entries (bidegree `(1,0)` for the
/// first `k` columns, `(0,1)` for the rest).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonadData {
    k: i64,
    j: Matrix,
    /// `x_columns[i][w]` = coefficients of `(x0,x1,x2)` in entry `w` of
    /// column `i`
    x_columns: Vec<Vec<[Rational; 3]>>,
    y_columns: Vec<Vec<[Rational; 3]>>,
}

/// The standard symplectic form on `Q^{4k+2}`: block antidiagonal `±I`.
pub fn standard_symplectic_form(k: i64) -> Matrix {
    let n = (2 * k + 1) as usize;
    let mut j = Matrix::zero(2 * n, 2 * n);
    for i in 0..n {
        j[(i, i + n)] = rat(1, 1);
        j[(i + n, i)] = rat(-1, 1);
    }
    j
}

impl MonadData {
    pub fn new(
        k: i64,
        j: Matrix,
        x_columns: Vec<Vec<[Rational; 3]>>,
        y_columns: Vec<Vec<[Rational; 3]>>,
    ) -> Result<Self, MonadError> {
        if k < 1 {
            return Err(MonadError::BadCharge(k));
        }
        let dim_w = (4 * k + 2) as usize;
        if j.rows() != dim_w || j.cols() != dim_w {
            return Err(MonadError::Shape(format!("J must be {dim_w}x{dim_w}")));
        }
        if j.add(&j.transpose())? != Matrix::zero(dim_w, dim_w) {
            return Err(MonadError::NotSkew);
        }
        if j.rank() != dim_w {
            return Err(MonadError::SingularJ);
        }
        for (name, cols) in [("x", &x_columns), ("y", &y_columns)] {
            if cols.len() != k as usize {
                return Err(MonadError::Shape(format!("need {k} {name} columns")));
            }
            if cols.iter().any(|c| c.len() != dim_w) {
                return Err(MonadError::Shape(format!("{name} column entries must have length {dim_w}")));
            }
        }
        Ok(MonadData { k, j, x_columns, y_columns })
    }

    pub fn charge(&self) -> i64 {
        self.k
    }

    pub fn dim_w(&self) -> usize {
        (4 * self.k + 2) as usize
    }

    pub fn form(&self) -> &Matrix {
        &self.j
    }

    pub fn uses_standard_form(&self) -> bool {
        self.j == standard_symplectic_form(self.k)
    }

    fn column(&self, c: usize) -> (&Vec<[Rational; 3]>, ColumnSide) {
        let k = self.k as usize;
        if c < k {
            (&self.x_columns[c], ColumnSide::X)
        } else {
            (&self.y_columns[c - k], ColumnSide::Y)
        }
    }

    /// Entry `(w, c)` of `A` as a bigraded linear form.
    fn entry_form(&self, w: usize, c: usize) -> BigradedForm {
        let (col, side) = self.column(c);
        match side {
            ColumnSide::X => BigradedForm::linear_x(&col[w]),
            ColumnSide::Y => BigradedForm::linear_y(&col[w]),
        }
    }

    /// `A` evaluated at a point: a `(4k+2) × 2k` rational matrix.
    pub fn evaluate(&self, p: &FlagPoint) -> Matrix {
        let dim_w = self.dim_w();
        let k = self.k as usize;
        Matrix::from_fn(dim_w, 2 * k, |w, c| {
            let (col, side) = self.column(c);
            let vars = match side {
                ColumnSide::X => &p.x,
                ColumnSide::Y => &p.y,
            };
            col[w].iter().zip(vars).map(|(a, b)| a * b).sum()
        })
    }

    /// The `(i, j)` entry of `AᵗJA` as a bigraded form (bidegree (2,0),
    /// (1,1) or (0,2)), reduced modulo the flag quadric.
    pub fn ata_entry(&self, i: usize, j: usize) -> BigradedForm {
        let dim_w = self.dim_w();
        let fi: Vec<BigradedForm> = (0..dim_w).map(|w| self.entry_form(w, i)).collect();
        let fj: Vec<BigradedForm> = (0..dim_w).map(|w| self.entry_form(w, j)).collect();
        let (ai, bi) = fi[0].bidegree();
        let (aj, bj) = fj[0].bidegree();
        let mut acc = BigradedForm::zero(ai + aj, bi + bj);
        for m in 0..dim_w {
            if fi[m].is_zero() {
                continue;
            }
            // (J·col_j)[m] pairing: Σ_n J[m][n]·col_j[n]
            let mut jn = BigradedForm::zero(aj, bj);
            for n in 0..dim_w {
                if !self.j[(m, n)].is_zero() {
                    jn = jn.add(&fj[n].scale(&self.j[(m, n)])).expect("bidegree");
                }
            }
            acc = acc.add(&multiply_forms(&fi[m], &jn)).expect("bidegree");
        }
        acc
    }

    /// Entries of `AᵗJ` as linear forms: row `i`, column `w`.
    fn ataj_row_forms(&self) -> Vec<Vec<BigradedForm>> {
        let dim_w = self.dim_w();
        let k = self.k as usize;
        (0..2 * k)
            .map(|i| {
                let (col, side) = self.column(i);
                (0..dim_w)
                    .map(|w| {
                        let mut coeffs = [Rational::zero(), Rational::zero(), Rational::zero()];
                        for n in 0..dim_w {
                            let jn = &self.j[(n, w)];
                            if !jn.is_zero() {
                                for a in 0..3 {
                                    coeffs[a] += &col[n][a] * jn;
                                }
                            }
                        }
                        match side {
                            ColumnSide::X => BigradedForm::linear_x(&coeffs),
                            ColumnSide::Y => BigradedForm::linear_y(&coeffs),
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

/// Outcome of the full validation pass.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub charge: i64,
    /// `AᵗJA = 0` holds identically (checked exactly, not sampled)
    pub ata_zero: bool,
    pub ata_failure: Option<String>,
    pub injectivity_samples: usize,
    pub injectivity_failures: Vec<FlagPoint>,
    pub h0: usize,
    pub h1: usize,
    pub h1_expected: usize,
    pub passed: bool,
}

/// Validate a monad: exact `AᵗJA = 0`, fiberwise injectivity at seeded
/// pseudorandom points, and `h⁰(E) = 0` with `h¹(E) = 2k-2` from the display.
pub fn validate(m: &MonadData, samples: usize, seed: u64) -> Result<ValidationReport, MonadError> {
    let k = m.charge();
    let two_k = (2 * k) as usize;

    let mut ata_zero = true;
    let mut ata_failure = None;
    'outer: for i in 0..two_k {
        for j in i..two_k {
            let f = m.ata_entry(i, j);
            if !f.is_zero() {
                ata_zero = false;
                let (a, b) = f.bidegree();
                ata_failure = Some(format!(
                    "entry ({i},{j}) of bidegree ({a},{b}) is {}",
                    f.to_display()
                ));
                break 'outer;
            }
        }
    }

    let failures: Vec<FlagPoint> = (0..samples)
        .into_par_iter()
        .filter_map(|idx| {
            let mut rng = subsample_rng(seed, idx as u64);
            let p = random_flag_point(&mut rng);
            if m.evaluate(&p).rank() != two_k {
                Some(p)
            } else {
                None
            }
        })
        .collect();

    let h0 = h0_twist(m, 0, 0)?;
    let h1 = h1_via_display(m);
    let h1_expected = (2 * k - 2) as usize;
    let passed = ata_zero && failures.is_empty() && h0 == 0 && h1 == h1_expected;
    Ok(ValidationReport {
        charge: k,
        ata_zero,
        ata_failure,
        injectivity_samples: samples,
        injectivity_failures: failures,
        h0,
        h1,
        h1_expected,
        passed,
    })
}

/// `h¹(E) = 6k - rank` of the constant-coefficient section map
/// `W -> C^{6k}` cut out by `AᵗJ`; `h⁰(E)` is the kernel dimension of the
/// same map.
pub fn h1_via_display(m: &MonadData) -> usize {
    let rank = section_map(m).rank();
    6 * m.charge() as usize - rank
}

pub fn h0_via_display(m: &MonadData) -> usize {
    m.dim_w() - section_map(m).rank()
}

fn section_map(m: &MonadData) -> Matrix {
    let rows_forms = m.ataj_row_forms();
    let dim_w = m.dim_w();
    let two_k = 2 * m.charge() as usize;
    // 3 coefficient rows per monad row
    Matrix::from_fn(3 * two_k, dim_w, |r, w| {
        let (i, alpha) = (r / 3, r % 3);
        let f = &rows_forms[i][w];
        let (a, _) = f.bidegree();
        let mut e = [0u32; 6];
        if a == 1 {
            e[alpha] = 1;
        } else {
            e[3 + alpha] = 1;
        }
        f.coeff(&Mono(e))
    })
}

/// Fiber data at a point: `U = A(p)(H1 ⊕ H2)` and its annihilator under `J`.
/// `U ⊆ U°` with `dim U = 2k`, `dim U° = 2k+2`; a rank drop is reported as a
/// degenerate fiber.
pub fn fiber(m: &MonadData, p: &FlagPoint) -> Result<(Subspace, Subspace), MonadError> {
    let a = m.evaluate(p);
    let u = a.column_space();
    let expected = 2 * m.charge() as usize;
    if u.dim() != expected {
        return Err(MonadError::DegenerateFiber(u.dim(), expected));
    }
    let u_ann = annihilator(&u, m.form())?;
    Ok((u, u_ann))
}

/// Splitting type on the conic spanned by two non-aligned points:
/// `E|_C = O(-s) ⊕ O(s)` with `s = dim(U_p° ∩ U_q)`.
pub fn splitting_type(m: &MonadData, p: &FlagPoint, q: &FlagPoint) -> Result<usize, MonadError> {
    // the conic must exist and be smooth
    conic_through(p, q)?;
    let (_, up_ann) = fiber(m, p)?;
    let (uq, _) = fiber(m, q)?;
    Ok(up_ann.intersect(&uq)?.dim())
}

/// `2k - rank(A(p)ᵗ J A(q))`: the same number through the bilinear pairing
/// of the two fibers.
pub fn splitting_rank_check(m: &MonadData, p: &FlagPoint, q: &FlagPoint) -> usize {
    let ap = m.evaluate(p);
    let aq = m.evaluate(q);
    let pairing = ap.transpose().mul(m.form()).unwrap().mul(&aq).unwrap();
    2 * m.charge() as usize - pairing.rank()
}

/// Independent splitting-type computation on a parametrized conic: restrict
/// the display to `C ≅ P¹` and read off `s` from the graded module of
/// sections — `h⁰(E_C(t))` is the space of degree-`t` kernels of `AᵗJ|_C`
/// modulo the image of `A|_C`, and the balanced part grows by multiplication
/// in degree one, so the single new generator appears exactly in degree `s`.
pub fn splitting_oracle(m: &MonadData, conic: &ConicParam) -> Result<usize, MonadError> {
    let dim_w = m.dim_w();
    let two_k = 2 * m.charge() as usize;

    // A|_C = A0·s + A1·t
    let col_at = |j: usize| -> (Vec<Rational>, Vec<Rational>) {
        let (col, side) = m.column(j);
        let param = match side {
            ColumnSide::X => &conic.x_param,
            ColumnSide::Y => &conic.y_param,
        };
        let dot = |pc: usize| -> Vec<Rational> {
            col.iter()
                .map(|entry| entry.iter().zip(param.iter().map(|r| &r[pc])).map(|(c, v)| c * v).sum())
                .collect()
        };
        (dot(0), dot(1))
    };
    let mut a0 = Matrix::zero(dim_w, two_k);
    let mut a1 = Matrix::zero(dim_w, two_k);
    for j in 0..two_k {
        let (c0, c1) = col_at(j);
        for w in 0..dim_w {
            a0[(w, j)] = c0[w].clone();
            a1[(w, j)] = c1[w].clone();
        }
    }
    let b0 = a0.transpose().mul(m.form())?;
    let b1 = a1.transpose().mul(m.form())?;

    // restriction of AᵗJA must vanish identically in (s,t)
    let z00 = b0.mul(&a0)?;
    let z11 = b1.mul(&a1)?;
    let z01 = b0.mul(&a1)?.add(&b1.mul(&a0)?)?;
    if !(z00.is_zero() && z11.is_zero() && z01.is_zero()) {
        return Err(MonadError::NotComplexOnConic);
    }

    let max_t = two_k;
    // basis of W ⊗ R_t: index (w, i) with monomial s^i t^(t-i)
    let kernel_at = |t: usize| -> Subspace {
        let rows = two_k * (t + 2);
        let cols = dim_w * (t + 1);
        let mut mat = Matrix::zero(rows, cols);
        for w in 0..dim_w {
            for i in 0..=t {
                let c = w * (t + 1) + i;
                for r in 0..two_k {
                    // B0·e_w lands on s^(i+1) t^(t-i), B1·e_w on s^i t^(t-i+1)
                    let m0 = &b0[(r, w)];
                    if !m0.is_zero() {
                        let row = r * (t + 2) + (i + 1);
                        mat[(row, c)] = &mat[(row, c)] + m0;
                    }
                    let m1 = &b1[(r, w)];
                    if !m1.is_zero() {
                        let row = r * (t + 2) + i;
                        mat[(row, c)] = &mat[(row, c)] + m1;
                    }
                }
            }
        }
        mat.kernel_basis()
    };
    // image of A|_C in W ⊗ R_t, as columns over basis (c, j): c-th column of
    // A times s^j t^(t-1-j)
    let image_cols_at = |t: usize| -> Vec<Vec<Rational>> {
        if t == 0 {
            return vec![];
        }
        let mut cols = Vec::new();
        for c in 0..two_k {
            for j in 0..t {
                let mut v = vec![Rational::zero(); dim_w * (t + 1)];
                for w in 0..dim_w {
                    let c0 = &a0[(w, c)];
                    if !c0.is_zero() {
                        v[w * (t + 1) + j + 1] = &v[w * (t + 1) + j + 1] + c0;
                    }
                    let c1 = &a1[(w, c)];
                    if !c1.is_zero() {
                        v[w * (t + 1) + j] = &v[w * (t + 1) + j] + c1;
                    }
                }
                cols.push(v);
            }
        }
        cols
    };

    let mut kernels = Vec::with_capacity(max_t + 1);
    for t in 0..=max_t {
        kernels.push(kernel_at(t));
    }
    let mut h = Vec::with_capacity(max_t + 1);
    for (t, v) in kernels.iter().enumerate() {
        let image = image_cols_at(t);
        let ambient = dim_w * (t + 1);
        let image_rank = if image.is_empty() {
            0
        } else {
            for col in &image {
                if !v.contains(col) {
                    return Err(MonadError::InconsistentSections(
                        "image of A does not lie in the kernel of AᵗJ".into(),
                    ));
                }
            }
            Subspace::from_vectors(ambient, image.clone()).dim()
        };
        h.push(v.dim() - image_rank);
    }

    // new generators: dim of V_t not reached by R1·V_(t-1) + image
    let mut generator_degrees = Vec::new();
    for t in 1..=max_t {
        let ambient = dim_w * (t + 1);
        let mut span = image_cols_at(t);
        for v in kernels[t - 1].basis() {
            // multiply by s and by t: shift the monomial index
            let mut by_s = vec![Rational::zero(); ambient];
            let mut by_t = vec![Rational::zero(); ambient];
            for w in 0..dim_w {
                for i in 0..t {
                    let x = &v[w * t + i];
                    if !x.is_zero() {
                        by_s[w * (t + 1) + i + 1] = x.clone();
                        by_t[w * (t + 1) + i] = x.clone();
                    }
                }
            }
            span.push(by_s);
            span.push(by_t);
        }
        let reached = if span.is_empty() {
            0
        } else {
            Subspace::from_vectors(ambient, span).dim()
        };
        let fresh = kernels[t].dim() - reached;
        if fresh > 0 {
            generator_degrees.push((t, fresh));
        }
    }

    let s = match generator_degrees.as_slice() {
        [] => 0,
        [(t, 1)] => *t,
        other => {
            return Err(MonadError::InconsistentSections(format!(
                "generator degrees {other:?}"
            )))
        }
    };

    // cross-check the whole Hilbert function against O(-s) ⊕ O(s)
    for (t, &ht) in h.iter().enumerate() {
        let t = t as i64;
        let s = s as i64;
        let expected = (t + s + 1) + 0.max(t - s + 1);
        if ht as i64 != expected {
            return Err(MonadError::InconsistentSections(format!(
                "h(E_C({t})) = {ht}, expected {expected} for s = {s}"
            )));
        }
    }
    Ok(s)
}

/// `h⁰(E(a·h1 + b·h2))` for `a, b >= 0` from the display: the kernel of
/// `AᵗJ` on `W ⊗ B_(a,b)` modulo the image of `A` on
/// `H1 ⊗ B_(a-1,b) ⊕ H2 ⊗ B_(a,b-1)`. Valid because `h¹` of the twists
/// `(a-1, b)` and `(a, b-1)` vanishes, which is asserted at runtime.
pub fn h0_twist(m: &MonadData, a: i64, b: i64) -> Result<usize, MonadError> {
    if a < 0 || b < 0 {
        return Err(MonadError::NegativeTwist(a, b));
    }
    assert_eq!(line_bundle_cohomology(a - 1, b).h1, 0, "display twist must have no h1");
    assert_eq!(line_bundle_cohomology(a, b - 1).h1, 0, "display twist must have no h1");

    let dim_w = m.dim_w();
    let k = m.charge() as usize;
    let source_basis = basis(a, b);
    let row_basis_x = basis(a + 1, b);
    let row_basis_y = basis(a, b + 1);
    let row_index = |side: ColumnSide, i: usize, mono: &Mono| -> usize {
        match side {
            ColumnSide::X => i * row_basis_x.len() + pos(&row_basis_x, mono),
            ColumnSide::Y => {
                k * row_basis_x.len() + i * row_basis_y.len() + pos(&row_basis_y, mono)
            }
        }
    };
    let rows_forms = m.ataj_row_forms();
    let n_rows = k * row_basis_x.len() + k * row_basis_y.len();
    let n_cols = dim_w * source_basis.len();
    let mut mat = Matrix::zero(n_rows, n_cols);
    for w in 0..dim_w {
        for (nu_i, nu) in source_basis.iter().enumerate() {
            let col = w * source_basis.len() + nu_i;
            let nu_form = mono_form(nu);
            for i in 0..2 * k {
                let g = &rows_forms[i][w];
                if g.is_zero() {
                    continue;
                }
                let prod = multiply_forms(g, &nu_form);
                let (side, idx) = if i < k { (ColumnSide::X, i) } else { (ColumnSide::Y, i - k) };
                for (mono, c) in prod.terms() {
                    let r = row_index(side, idx, mono);
                    mat[(r, col)] = &mat[(r, col)] + c;
                }
            }
        }
    }
    let kernel = mat.kernel_basis();

    // image of A on H1 ⊗ B_(a-1,b) ⊕ H2 ⊗ B_(a,b-1)
    let tau_x = basis(a - 1, b);
    let tau_y = basis(a, b - 1);
    let mut image_cols: Vec<Vec<Rational>> = Vec::new();
    for c in 0..2 * k {
        let taus = if c < k { &tau_x } else { &tau_y };
        for tau in taus {
            let tau_form = mono_form(tau);
            let mut v = vec![Rational::zero(); n_cols];
            for w in 0..dim_w {
                let prod = multiply_forms(&m.entry_form(w, c), &tau_form);
                for (mono, coeff) in prod.terms() {
                    v[w * source_basis.len() + pos(&source_basis, mono)] = coeff.clone();
                }
            }
            image_cols.push(v);
        }
    }
    let image_rank = if image_cols.is_empty() {
        0
    } else {
        for col in &image_cols {
            if !kernel.contains(col) {
                return Err(MonadError::InconsistentSections(
                    "image of A does not lie in the kernel of AᵗJ; AᵗJA != 0".into(),
                ));
            }
        }
        Subspace::from_vectors(n_cols, image_cols).dim()
    };
    Ok(kernel.dim() - image_rank)
}

fn pos(basis: &[Mono], m: &Mono) -> usize {
    basis.binary_search(m).expect("monomial lies in the stated basis")
}

fn mono_form(m: &Mono) -> BigradedForm {
    let (a, b) = m.bidegree();
    BigradedForm::from_terms(a, b, vec![(*m, Rational::one())])
}

/// Deterministic per-sample substream: reproducible regardless of thread
/// count.
fn subsample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    // splitmix64 on (seed, index)
    let mut z = seed ^ index.wrapping_mul(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^= z >> 31;
    ChaCha8Rng::seed_from_u64(z)
}

/// Random exact rational point of `F` with small integer coordinates.
pub fn random_flag_point(rng: &mut ChaCha8Rng) -> FlagPoint {
    loop {
        let x: [Rational; 3] = std::array::from_fn(|_| rat(rng.gen_range(-9..=9i64), 1));
        if x.iter().all(|c| c.is_zero()) {
            continue;
        }
        // y in the plane x·y = 0
        let xm = Matrix::from_rows(vec![x.to_vec()]);
        let plane = xm.kernel_basis();
        debug_assert_eq!(plane.dim(), 2);
        let a = rat(rng.gen_range(-9..=9i64), 1);
        let b = rat(rng.gen_range(-9..=9i64), 1);
        let y: [Rational; 3] = std::array::from_fn(|i| {
            &a * &plane.basis()[0][i] + &b * &plane.basis()[1][i]
        });
        if y.iter().all(|c| c.is_zero()) {
            continue;
        }
        return FlagPoint::new(x, y).expect("constructed on the quadric");
    }
}

/// A pair spanning a smooth conic with both fibers non-degenerate.
fn random_good_pair(m: &MonadData, rng: &mut ChaCha8Rng) -> (FlagPoint, FlagPoint, ConicParam) {
    loop {
        let p = random_flag_point(rng);
        let q = random_flag_point(rng);
        let Ok(conic) = conic_through(&p, &q) else { continue };
        if fiber(m, &p).is_ok() && fiber(m, &q).is_ok() {
            return (p, q, conic);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRow {
    pub index: usize,
    pub p: FlagPoint,
    pub q: FlagPoint,
    pub s: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanResult {
    pub histogram: BTreeMap<usize, usize>,
    pub rows: Vec<ScanRow>,
}

/// Sample `n_conics` random smooth conics and record the splitting type of
/// each. Deterministic for a given `(monad, n_conics, seed)`; samples draw
/// from per-index substreams so the result is independent of thread count.
pub fn jump_scan(m: &MonadData, n_conics: usize, seed: u64) -> Result<ScanResult, MonadError> {
    let rows: Result<Vec<ScanRow>, MonadError> = (0..n_conics)
        .into_par_iter()
        .map(|index| {
            let mut rng = subsample_rng(seed.wrapping_add(0x5ca1ab1e), index as u64);
            let (p, q, _) = random_good_pair(m, &mut rng);
            let s = splitting_type(m, &p, &q)?;
            Ok(ScanRow { index, p, q, s })
        })
        .collect();
    let rows = rows?;
    let mut histogram = BTreeMap::new();
    for s in 0..=(2 * m.charge() as usize) {
        histogram.insert(s, 0);
    }
    for r in &rows {
        *histogram.get_mut(&r.s).unwrap() += 1;
    }
    Ok(ScanResult { histogram, rows })
}

/// Randomized construction of a valid monad. Columns are drawn one at a
/// time; each new column solves the linear conditions that its `J`-pairings
/// with all previously fixed columns vanish identically as forms (cross
/// pairings are reduced modulo the flag quadric before being imposed). The
/// assembled candidate is accepted once spot injectivity and `h⁰(E) = 0`
/// hold; otherwise the search restarts with fresh randomness.
pub fn search(k: i64, seed: u64, max_attempts: usize) -> Result<MonadData, MonadError> {
    if k < 1 {
        return Err(MonadError::BadCharge(k));
    }
    let j = standard_symplectic_form(k);
    let dim_w = (4 * k + 2) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fail_rank = 0usize;
    let mut fail_h0 = 0usize;
    let mut fail_build = 0usize;

    for _ in 0..max_attempts {
        let Some(candidate) = try_build(k, &j, dim_w, &mut rng) else {
            fail_build += 1;
            continue;
        };
        // by construction AᵗJA = 0; certify the rest cheaply before returning
        let mut ok = true;
        for idx in 0..64u64 {
            let mut prng = subsample_rng(seed ^ 0xfeed, idx);
            let p = random_flag_point(&mut prng);
            if candidate.evaluate(&p).rank() != (2 * k) as usize {
                ok = false;
                break;
            }
        }
        if !ok {
            fail_rank += 1;
            continue;
        }
        if h0_twist(&candidate, 0, 0)? != 0 {
            fail_h0 += 1;
            continue;
        }
        return Ok(candidate);
    }
    Err(MonadError::SearchExhausted {
        attempts: max_attempts,
        failures: format!(
            "build: {fail_build}, fiber rank: {fail_rank}, h0: {fail_h0}"
        ),
    })
}

fn try_build(k: i64, j: &Matrix, dim_w: usize, rng: &mut ChaCha8Rng) -> Option<MonadData> {
    let k = k as usize;
    let mut x_cols: Vec<Vec<[Rational; 3]>> = Vec::new();
    let mut y_cols: Vec<Vec<[Rational; 3]>> = Vec::new();

    for i in 0..k {
        let col = if i == 0 {
            random_column(dim_w, rng)
        } else {
            let constraints = pairing_constraints(j, &x_cols, ColumnSide::X, ColumnSide::X, dim_w);
            solve_random(&constraints, dim_w, rng)?
        };
        x_cols.push(col);
    }
    for _ in 0..k {
        let mut constraints = pairing_constraints(j, &x_cols, ColumnSide::X, ColumnSide::Y, dim_w);
        constraints
            .extend(pairing_constraints(j, &y_cols, ColumnSide::Y, ColumnSide::Y, dim_w));
        y_cols.push(solve_random(&constraints, dim_w, rng)?);
    }
    let m = MonadData::new(k as i64, j.clone(), x_cols, y_cols).ok()?;
    // construction guarantees this; keep the exact check as a safety net
    for a in 0..2 * k {
        for b in a..2 * k {
            debug_assert!(m.ata_entry(a, b).is_zero());
        }
    }
    Some(m)
}

fn random_column(dim_w: usize, rng: &mut ChaCha8Rng) -> Vec<[Rational; 3]> {
    (0..dim_w)
        .map(|_| std::array::from_fn(|_| rat(rng.gen_range(-4..=4i64), 1)))
        .collect()
}

/// Linear conditions on the coefficients of a new column `z` on side
/// `new_side`: for every fixed column `a`, the form `aᵗJz` must vanish. Rows
/// are indexed by the monomials of the product bidegree, after normal-form
/// reduction for the mixed (1,1) case; columns by the `3·dim_w` unknowns.
fn pairing_constraints(
    j: &Matrix,
    fixed: &[Vec<[Rational; 3]>],
    fixed_side: ColumnSide,
    new_side: ColumnSide,
    dim_w: usize,
) -> Vec<Vec<Rational>> {
    let mut rows = Vec::new();
    for col in fixed {
        // raw coefficients on pairs (alpha, beta): var_alpha(fixed) * var_beta(new)
        let mut raw = vec![vec![Rational::zero(); 3 * dim_w]; 9];
        for m in 0..dim_w {
            for n in 0..dim_w {
                let jmn = &j[(m, n)];
                if jmn.is_zero() {
                    continue;
                }
                for alpha in 0..3 {
                    let c = &col[m][alpha] * jmn;
                    if c.is_zero() {
                        continue;
                    }
                    for beta in 0..3 {
                        raw[3 * alpha + beta][3 * n + beta] = &raw[3 * alpha + beta][3 * n + beta] + &c;
                    }
                }
            }
        }
        if fixed_side == new_side {
            // same side: symmetrize x_alpha x_beta onto the 6 monomials
            let mut sym = vec![vec![Rational::zero(); 3 * dim_w]; 6];
            let order = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];
            for (alpha, beta) in (0..3).flat_map(|a| (0..3).map(move |b| (a, b))) {
                let (lo, hi) = (alpha.min(beta), alpha.max(beta));
                let idx = order.iter().position(|&p| p == (lo, hi)).unwrap();
                for c in 0..3 * dim_w {
                    let add = raw[3 * alpha + beta][c].clone();
                    sym[idx][c] = &sym[idx][c] + &add;
                }
            }
            rows.extend(sym);
        } else {
            // mixed (1,1) form: reduce x0y0 -> -x1y1 - x2y2 before imposing 0.
            // raw index 3*alpha+beta means x_alpha y_beta when the fixed side
            // is X, and y_alpha x_beta otherwise; renormalize to x_a y_b.
            let cell = |a: usize, b: usize| -> usize {
                match fixed_side {
                    ColumnSide::X => 3 * a + b,
                    ColumnSide::Y => 3 * b + a,
                }
            };
            let mut reduced = vec![vec![Rational::zero(); 3 * dim_w]; 8];
            // normal-form basis order: x_a y_b without (0,0):
            let nf = [(0, 1), (0, 2), (1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2)];
            for (a, b) in (0..3).flat_map(|a| (0..3).map(move |b| (a, b))) {
                let src = &raw[cell(a, b)];
                if (a, b) == (0, 0) {
                    for c in 0..3 * dim_w {
                        let v = src[c].clone();
                        if v.is_zero() {
                            continue;
                        }
                        let i11 = nf.iter().position(|&p| p == (1, 1)).unwrap();
                        let i22 = nf.iter().position(|&p| p == (2, 2)).unwrap();
                        reduced[i11][c] = &reduced[i11][c] - &v;
                        reduced[i22][c] = &reduced[i22][c] - &v;
                    }
                } else {
                    let idx = nf.iter().position(|&p| p == (a, b)).unwrap();
                    for c in 0..3 * dim_w {
                        reduced[idx][c] = &reduced[idx][c] + &src[c];
                    }
                }
            }
            rows.extend(reduced);
        }
    }
    rows
}

/// A random nonzero small-integer element of the solution space, normalized
/// column-wise to primitive integers.
fn solve_random(
    constraints: &[Vec<Rational>],
    dim_w: usize,
    rng: &mut ChaCha8Rng,
) -> Option<Vec<[Rational; 3]>> {
    let n = 3 * dim_w;
    let kernel = if constraints.is_empty() {
        Subspace::full(n)
    } else {
        Matrix::from_rows(constraints.to_vec()).kernel_basis()
    };
    if kernel.dim() == 0 {
        return None;
    }
    for _ in 0..16 {
        let mut v = vec![Rational::zero(); n];
        for b in kernel.basis() {
            let c = rat(rng.gen_range(-4..=4i64), 1);
            if c.is_zero() {
                continue;
            }
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi += &c * bi;
            }
        }
        if v.iter().all(|c| c.is_zero()) {
            continue;
        }
        let prim = crate::exact::primitive_direction(&v)?;
        let col: Vec<[Rational; 3]> = (0..dim_w)
            .map(|w| std::array::from_fn(|a| prim[3 * w + a].clone()))
            .collect();
        return Some(col);
    }
    None
}

// ---------------------------------------------------------------------------
// JSON serialization of monad files
// ---------------------------------------------------------------------------

impl MonadData {
    pub fn to_json_value(&self) -> serde_json::Value {
        use serde_json::{json, Value};
        let cols = |cols: &Vec<Vec<[Rational; 3]>>| -> Value {
            Value::Array(
                cols.iter()
                    .map(|col| {
                        Value::Array(
                            col.iter()
                                .map(|entry| {
                                    Value::Array(
                                        entry
                                            .iter()
                                            .map(|c| Value::String(rat_to_string(c)))
                                            .collect(),
                                    )
                                })
                                .collect(),
                        )
                    })
                    .collect(),
            )
        };
        let j_value = if self.uses_standard_form() {
            Value::String("standard".into())
        } else {
            Value::Array(
                (0..self.j.rows())
                    .map(|i| {
                        Value::Array(
                            (0..self.j.cols())
                                .map(|jj| Value::String(rat_to_string(&self.j[(i, jj)])))
                                .collect(),
                        )
                    })
                    .collect(),
            )
        };
        json!({
            "charge": self.k,
            "J": j_value,
            "x_columns": cols(&self.x_columns),
            "y_columns": cols(&self.y_columns),
        })
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Self, MonadError> {
        use serde_json::Value;
        let bad = |msg: &str| MonadError::BadFile(msg.to_string());
        let k = v.get("charge").and_then(Value::as_i64).ok_or_else(|| bad("missing charge"))?;
        let dim_w = (4 * k + 2) as usize;
        let j = match v.get("J") {
            Some(Value::String(s)) if s == "standard" => standard_symplectic_form(k),
            Some(Value::Array(rows)) => {
                if rows.len() != dim_w {
                    return Err(bad("J has the wrong number of rows"));
                }
                let mut m = Matrix::zero(dim_w, dim_w);
                for (i, row) in rows.iter().enumerate() {
                    let row = row.as_array().ok_or_else(|| bad("J rows must be arrays"))?;
                    if row.len() != dim_w {
                        return Err(bad("J has the wrong number of columns"));
                    }
                    for (jj, cell) in row.iter().enumerate() {
                        m[(i, jj)] = parse_rat_value(cell)?;
                    }
                }
                m
            }
            _ => return Err(bad("missing J")),
        };
        let parse_cols = |key: &str| -> Result<Vec<Vec<[Rational; 3]>>, MonadError> {
            let arr = v.get(key).and_then(Value::as_array).ok_or_else(|| bad("missing columns"))?;
            arr.iter()
                .map(|col| {
                    let col = col.as_array().ok_or_else(|| bad("column must be an array"))?;
                    col.iter()
                        .map(|entry| {
                            let entry =
                                entry.as_array().ok_or_else(|| bad("entry must be an array"))?;
                            if entry.len() != 3 {
                                return Err(bad("entry must have 3 coefficients"));
                            }
                            Ok([
                                parse_rat_value(&entry[0])?,
                                parse_rat_value(&entry[1])?,
                                parse_rat_value(&entry[2])?,
                            ])
                        })
                        .collect()
                })
                .collect()
        };
        MonadData::new(k, j, parse_cols("x_columns")?, parse_cols("y_columns")?)
    }
}

fn parse_rat_value(v: &serde_json::Value) -> Result<Rational, MonadError> {
    match v {
        serde_json::Value::String(s) => {
            crate::exact::rat_from_str(s).map_err(|e| MonadError::BadFile(e.to_string()))
        }
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(|x| rat(x, 1))
            .ok_or_else(|| MonadError::BadFile(format!("non-integer number {n}"))),
        _ => Err(MonadError::BadFile("rational must be a string or integer".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k1_monad() -> MonadData {
        search(1, 0, 200).expect("charge-1 search succeeds")
    }

    #[test]
    fn standard_form_is_symplectic() {
        for k in 1..=3 {
            let j = standard_symplectic_form(k);
            assert_eq!(j.rank(), (4 * k + 2) as usize);
            assert_eq!(j.add(&j.transpose()).unwrap(), Matrix::zero(j.rows(), j.cols()));
        }
    }

    #[test]
    fn flag_point_validation() {
        assert!(FlagPoint::from_i64([1, 0, 0], [0, 1, 0]).is_ok());
        assert_eq!(FlagPoint::from_i64([1, 0, 0], [1, 0, 0]), Err(MonadError::NotOnFlag));
        assert_eq!(FlagPoint::from_i64([0, 0, 0], [1, 0, 0]), Err(MonadError::ZeroPoint));
    }

    #[test]
    fn conic_through_example() {
        let p = FlagPoint::from_i64([1, 0, 0], [0, 1, 0]).unwrap();
        let q = FlagPoint::from_i64([0, 1, 0], [1, 0, 1]).unwrap();
        let c = conic_through(&p, &q).unwrap();
        // x(s,t) = (s : t : 0)
        let one = rat(1, 1);
        let zero = rat(0, 1);
        assert_eq!(
            c.x_param(),
            &[
                [one.clone(), zero.clone()],
                [zero.clone(), one.clone()],
                [zero.clone(), zero.clone()]
            ]
        );
        // y(s,t) = (t : -s : t)
        assert_eq!(
            c.y_param(),
            &[
                [zero.clone(), one.clone()],
                [-one.clone(), zero.clone()],
                [zero.clone(), one.clone()]
            ]
        );
        // passes through p and q
        assert!(proportional(c.at(&rat(1, 1), &rat(0, 1)).unwrap().x(), p.x()));
        assert!(proportional(c.at(&rat(0, 1), &rat(1, 1)).unwrap().y(), q.y()));
    }

    #[test]
    fn conic_rejects_degenerate_pairs() {
        let p = FlagPoint::from_i64([1, 0, 0], [0, 1, 0]).unwrap();
        assert_eq!(conic_through(&p, &p), Err(MonadError::AlignedPoints));
        let aligned = FlagPoint::from_i64([1, 0, 0], [0, 0, 1]).unwrap();
        assert_eq!(conic_through(&p, &aligned), Err(MonadError::AlignedPoints));
        // non-aligned but the induced pair lies on F: singular conic
        let q = FlagPoint::from_i64([0, 0, 1], [1, 0, 0]).unwrap();
        assert_eq!(conic_through(&p, &q), Err(MonadError::SingularConic));
    }

    #[test]
    fn search_produces_valid_charge_one_monad() {
        let m = k1_monad();
        let report = validate(&m, 200, 7).unwrap();
        assert!(report.passed, "{report:?}");
        assert_eq!(report.h0, 0);
        assert_eq!(report.h1, 0); // 2k-2 = 0
        assert_eq!(h0_twist(&m, 1, 0).unwrap(), 3);
        assert_eq!(h0_twist(&m, 0, 1).unwrap(), 3);
    }

    #[test]
    fn zero_columns_fail_injectivity() {
        let k = 1;
        let dim_w = 6;
        let zero_cols = vec![vec![[rat(0, 1), rat(0, 1), rat(0, 1)]; dim_w]; 1];
        let m = MonadData::new(k, standard_symplectic_form(k), zero_cols.clone(), zero_cols)
            .unwrap();
        let report = validate(&m, 10, 0).unwrap();
        assert!(!report.passed);
        assert!(report.ata_zero); // zero map is a complex
        assert_eq!(report.injectivity_failures.len(), 10);
    }

    #[test]
    fn perturbed_monad_fails_exact_complex_check() {
        let mut m = k1_monad();
        m.x_columns[0][0][0] += rat(1, 1);
        let report = validate(&m, 10, 0).unwrap();
        assert!(!report.ata_zero);
        assert!(report.ata_failure.is_some());
        assert!(!report.passed);
    }

    #[test]
    fn fiber_dimensions_and_inclusion() {
        let m = k1_monad();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let p = random_flag_point(&mut rng);
            let (u, u_ann) = fiber(&m, &p).unwrap();
            assert_eq!(u.dim(), 2);
            assert_eq!(u_ann.dim(), 4);
            assert!(u.is_subspace_of(&u_ann));
        }
    }

    #[test]
    fn splitting_type_is_symmetric_and_matches_rank_and_oracle() {
        let m = k1_monad();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut seen_nonzero = 0;
        for _ in 0..40 {
            let (p, q, conic) = random_good_pair(&m, &mut rng);
            let s = splitting_type(&m, &p, &q).unwrap();
            assert!(s <= 2);
            assert_eq!(s, splitting_type(&m, &q, &p).unwrap());
            assert_eq!(s, splitting_rank_check(&m, &p, &q));
            assert_eq!(s, splitting_oracle(&m, &conic).unwrap());
            if s > 0 {
                seen_nonzero += 1;
            }
        }
        let _ = seen_nonzero;
    }

    #[test]
    fn jump_scan_is_deterministic_and_bounded() {
        let m = k1_monad();
        let a = jump_scan(&m, 30, 3).unwrap();
        let b = jump_scan(&m, 30, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.rows.len(), 30);
        let total: usize = a.histogram.values().sum();
        assert_eq!(total, 30);
        assert!(a.histogram.keys().all(|&s| s <= 2));
    }

    #[test]
    fn two_seeds_give_two_valid_monads() {
        let m0 = search(1, 0, 200).unwrap();
        let m1 = search(1, 1, 200).unwrap();
        assert!(validate(&m0, 50, 0).unwrap().passed);
        assert!(validate(&m1, 50, 0).unwrap().passed);
        assert_ne!(m0, m1);
    }

    #[test]
    fn json_round_trip() {
        let m = k1_monad();
        let v = m.to_json_value();
        assert_eq!(v["J"], serde_json::Value::String("standard".into()));
        let back = MonadData::from_json_value(&v).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn h0_twist_rejects_negative_twists() {
        let m = k1_monad();
        assert!(matches!(h0_twist(&m, -1, 0), Err(MonadError::NegativeTwist(-1, 0))));
    }
}
