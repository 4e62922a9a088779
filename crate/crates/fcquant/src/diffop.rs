//! Scalar and matrix differential operators of order `< p` on a chart.
//!
//! A scalar operator is `D = Σ a_i ∂^i` with chart-function coefficients;
//! a matrix connection is `∇ = ∂ + A` acting on column vectors. This module
//! provides composition, the formal transpose, principal and subprincipal
//! symbols, p-curvature by literal p-fold composition, and the brute-force
//! polynomial kernel oracle used to cross-check dormancy.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ffalg::{ChartRing, Expr, FpMat, Poly, RatFunc, RatMat};

/// Order of a differential operator; the zero operator has order `-∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    NegInfinity,
    Finite(usize),
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::NegInfinity => write!(f, "-inf"),
            Order::Finite(n) => write!(f, "{n}"),
        }
    }
}

/// `Σ a_i ∂^i` in the chart variable `var`, with `a_i` chart functions.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarDiffOp {
    ring: Arc<ChartRing>,
    var: usize,
    /// Coefficients indexed by ∂-power, highest nonzero last.
    coeffs: Vec<RatFunc>,
}

impl ScalarDiffOp {
    pub fn new(ring: &Arc<ChartRing>, var: usize, mut coeffs: Vec<RatFunc>) -> Result<Self> {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.len() as u64 > ring.p.p() {
            return Err(Error::OrderOverflow(coeffs.len() - 1, ring.p.p()));
        }
        Ok(ScalarDiffOp { ring: ring.clone(), var, coeffs })
    }

    pub fn zero(ring: &Arc<ChartRing>, var: usize) -> Self {
        ScalarDiffOp { ring: ring.clone(), var, coeffs: Vec::new() }
    }

    /// The derivation `∂` itself.
    pub fn derivation(ring: &Arc<ChartRing>, var: usize) -> Self {
        ScalarDiffOp {
            ring: ring.clone(),
            var,
            coeffs: vec![RatFunc::zero(ring), RatFunc::one(ring)],
        }
    }

    /// Multiplication by a chart function, as an order-0 operator.
    pub fn mult(f: &RatFunc, var: usize) -> Self {
        if f.is_zero() {
            return ScalarDiffOp::zero(f.ring(), var);
        }
        ScalarDiffOp { ring: f.ring().clone(), var, coeffs: vec![f.clone()] }
    }

    /// Monic operator `∂^n + q_1 ∂^{n-1} + … + q_n` from `(q_1, …, q_n)`.
    pub fn monic(ring: &Arc<ChartRing>, var: usize, qs: &[RatFunc]) -> Result<Self> {
        let n = qs.len();
        let mut coeffs = vec![RatFunc::zero(ring); n + 1];
        coeffs[n] = RatFunc::one(ring);
        for (i, q) in qs.iter().enumerate() {
            // q_{i+1} multiplies ∂^{n-i-1}
            coeffs[n - i - 1] = q.clone();
        }
        ScalarDiffOp::new(ring, var, coeffs)
    }

    pub fn ring(&self) -> &Arc<ChartRing> {
        &self.ring
    }

    pub fn var(&self) -> usize {
        self.var
    }

    pub fn order(&self) -> Order {
        if self.coeffs.is_empty() {
            Order::NegInfinity
        } else {
            Order::Finite(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> RatFunc {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| RatFunc::zero(&self.ring))
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &ScalarDiffOp) -> ScalarDiffOp {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| self.coeff(i).add(&other.coeff(i)))
            .collect();
        ScalarDiffOp::new(&self.ring, self.var, coeffs).expect("sum cannot raise order")
    }

    pub fn sub(&self, other: &ScalarDiffOp) -> ScalarDiffOp {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ScalarDiffOp {
        ScalarDiffOp {
            ring: self.ring.clone(),
            var: self.var,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn scale(&self, c: &RatFunc) -> ScalarDiffOp {
        ScalarDiffOp::new(
            &self.ring,
            self.var,
            self.coeffs.iter().map(|a| a.mul(c)).collect(),
        )
        .expect("scaling cannot raise order")
    }

    /// Apply to a chart function.
    pub fn apply(&self, f: &RatFunc) -> RatFunc {
        let mut acc = RatFunc::zero(&self.ring);
        let mut df = f.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                df = df.deriv(self.var);
            }
            if !a.is_zero() {
                acc = acc.add(&a.mul(&df));
            }
        }
        acc
    }

    /// Leibniz composition `self ∘ other`. Rejects formal order `>= p`.
    pub fn compose(&self, other: &ScalarDiffOp) -> Result<ScalarDiffOp> {
        let (Order::Finite(n1), Order::Finite(n2)) = (self.order(), other.order()) else {
            return Ok(ScalarDiffOp::zero(&self.ring, self.var));
        };
        if (n1 + n2) as u64 >= self.ring.p.p() {
            return Err(Error::OrderOverflow(n1 + n2, self.ring.p.p()));
        }
        let p = self.ring.p;
        let mut coeffs = vec![RatFunc::zero(&self.ring); n1 + n2 + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                // ∂^i ∘ (b ∂^j) = Σ_k C(i,k) b^{(k)} ∂^{i+j-k}
                let mut bk = b.clone();
                for k in 0..=i {
                    if k > 0 {
                        bk = bk.deriv(self.var);
                    }
                    let c = p.binomial(i as u64, k as u64);
                    if c == 0 || bk.is_zero() {
                        continue;
                    }
                    let term = a.mul(&bk).scale(c as i64);
                    coeffs[i + j - k] = coeffs[i + j - k].add(&term);
                }
            }
        }
        ScalarDiffOp::new(&self.ring, self.var, coeffs)
    }

    /// Formal adjoint `ᵗD = Σ (-∂)^i ∘ a_i`.
    pub fn transpose(&self) -> ScalarDiffOp {
        let mut acc = ScalarDiffOp::zero(&self.ring, self.var);
        let d = ScalarDiffOp::derivation(&self.ring, self.var);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mut term = ScalarDiffOp::mult(a, self.var);
            for _ in 0..i {
                term = d.compose(&term).expect("transpose keeps order < p").neg();
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Principal symbol: the top coefficient `a_n`.
    pub fn principal_symbol(&self) -> RatFunc {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| RatFunc::zero(&self.ring))
    }

    pub fn is_monic(&self) -> bool {
        self.principal_symbol() == RatFunc::one(&self.ring)
    }

    /// Subprincipal symbol of a monic operator: with
    /// `D' = ½ (D - (-1)^n ᵗD)` of order `<= n-1`, this is the coefficient
    /// of `∂^{n-1}` in `D'`.
    pub fn subprincipal_symbol(&self) -> Result<RatFunc> {
        let Order::Finite(n) = self.order() else {
            return Err(Error::NotMonic("zero operator".into()));
        };
        if !self.is_monic() {
            return Err(Error::NotMonic(format!(
                "principal symbol {}",
                self.principal_symbol()
            )));
        }
        let dprime = self.half_antisymmetrization();
        if let Order::Finite(m) = dprime.order() {
            assert!(m <= n.saturating_sub(1), "D' must drop order for monic D");
        }
        if n == 0 {
            return Ok(RatFunc::zero(&self.ring));
        }
        Ok(dprime.coeff(n - 1))
    }

    /// `D' = ½ (D - (-1)^n ᵗD)`.
    pub fn half_antisymmetrization(&self) -> ScalarDiffOp {
        let Order::Finite(n) = self.order() else {
            return self.clone();
        };
        let t = self.transpose();
        let signed = if n % 2 == 0 { t } else { t.neg() };
        let half = self.ring.p.inv(2);
        self.sub(&signed)
            .scale(&RatFunc::constant(&self.ring, half as i64))
    }

    pub fn to_display(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, a) in self.coeffs.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let dpow = match i {
                0 => String::new(),
                1 => "d".to_string(),
                _ => format!("d^{i}"),
            };
            let coeff = a.to_display();
            let part = if i == 0 {
                coeff
            } else if coeff == "1" {
                dpow
            } else if a.num().num_terms() > 1 {
                format!("({coeff})*{dpow}")
            } else {
                format!("{coeff}*{dpow}")
            };
            parts.push(part);
        }
        parts.join(" + ")
    }
}

impl fmt::Display for ScalarDiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_display())
    }
}

/// Evaluate a parsed expression as a differential operator; `d` is the
/// derivation in `var` and products are operator composition.
pub fn eval_operator(e: &Expr, ring: &Arc<ChartRing>, var: usize) -> Result<ScalarDiffOp> {
    match e {
        Expr::Int(v) => Ok(ScalarDiffOp::mult(&RatFunc::constant(ring, *v), var)),
        Expr::Ident(name, line, col) => {
            if name == "d" {
                Ok(ScalarDiffOp::derivation(ring, var))
            } else {
                let f = RatFunc::var(ring, name).map_err(|_| Error::Parse {
                    line: *line,
                    col: *col,
                    msg: format!("unknown variable {name}"),
                })?;
                Ok(ScalarDiffOp::mult(&f, var))
            }
        }
        Expr::Neg(a) => Ok(eval_operator(a, ring, var)?.neg()),
        Expr::Add(a, b) => Ok(eval_operator(a, ring, var)?.add(&eval_operator(b, ring, var)?)),
        Expr::Sub(a, b) => Ok(eval_operator(a, ring, var)?.sub(&eval_operator(b, ring, var)?)),
        Expr::Mul(a, b) => eval_operator(a, ring, var)?.compose(&eval_operator(b, ring, var)?),
        Expr::Div(a, b) => {
            let rhs = eval_operator(b, ring, var)?;
            if let Order::Finite(0) = rhs.order() {
                let inv = rhs.coeff(0).try_inverse()?;
                Ok(eval_operator(a, ring, var)?.scale(&inv))
            } else {
                Err(Error::Invalid("cannot divide by a differential operator".into()))
            }
        }
        Expr::Pow(a, e) => {
            let base = eval_operator(a, ring, var)?;
            if *e < 0 {
                if let Order::Finite(0) = base.order() {
                    let inv = base.coeff(0).try_inverse()?;
                    return Ok(ScalarDiffOp::mult(&inv.pow((-e) as u32), var));
                }
                return Err(Error::Invalid("negative power of an operator".into()));
            }
            let mut acc = ScalarDiffOp::mult(&RatFunc::one(ring), var);
            for _ in 0..*e {
                acc = acc.compose(&base)?;
            }
            Ok(acc)
        }
    }
}

/// Parse an operator expression such as `d^2 + 3/u^2`.
pub fn parse_operator(input: &str, ring: &Arc<ChartRing>, var: usize) -> Result<ScalarDiffOp> {
    let e = crate::ffalg::parse_expr(input)?;
    eval_operator(&e, ring, var)
}

/// Rank-n system `∇ = ∂ + A` on a chart.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixConnection {
    ring: Arc<ChartRing>,
    var: usize,
    a: RatMat,
}

impl MatrixConnection {
    pub fn new(ring: &Arc<ChartRing>, var: usize, a: RatMat) -> Result<Self> {
        if a.rows != a.cols {
            return Err(Error::Invalid("connection matrix must be square".into()));
        }
        if a.rows as u64 >= ring.p.p() {
            return Err(Error::Invalid(format!(
                "rank {} must stay below p = {}",
                a.rows,
                ring.p.p()
            )));
        }
        Ok(MatrixConnection { ring: ring.clone(), var, a })
    }

    pub fn rank(&self) -> usize {
        self.a.rows
    }

    pub fn matrix(&self) -> &RatMat {
        &self.a
    }

    pub fn ring(&self) -> &Arc<ChartRing> {
        &self.ring
    }

    pub fn var(&self) -> usize {
        self.var
    }

    /// Apply `∇ = ∂ + A` to a column vector of chart functions.
    pub fn apply(&self, v: &[RatFunc]) -> Vec<RatFunc> {
        assert_eq!(v.len(), self.rank());
        (0..self.rank())
            .map(|i| {
                let mut acc = v[i].deriv(self.var);
                for j in 0..self.rank() {
                    acc = acc.add(&self.a.get(i, j).mul(&v[j]));
                }
                acc
            })
            .collect()
    }
}

/// The order-0 part of `(∂ + A)^p`.
#[derive(Debug, Clone, PartialEq)]
pub struct PCurvatureMatrix {
    pub psi: RatMat,
}

impl PCurvatureMatrix {
    pub fn is_zero(&self) -> bool {
        self.psi.is_zero()
    }
}

/// Matrix differential operator `Σ B_i ∂^i` with the reduction `∂^p = 0`.
///
/// On localizations of the affine line `∂^p` kills every chart function, so
/// composition may soundly drop terms of formal order `>= p`. This internal
/// ring is exactly what the p-fold composition of `∂ + A` needs.
#[derive(Debug, Clone)]
struct MatrixDiffOp {
    ring: Arc<ChartRing>,
    var: usize,
    n: usize,
    coeffs: Vec<RatMat>,
}

impl MatrixDiffOp {
    fn identity(ring: &Arc<ChartRing>, var: usize, n: usize) -> Self {
        MatrixDiffOp {
            ring: ring.clone(),
            var,
            n,
            coeffs: vec![RatMat::identity(ring, n)],
        }
    }

    /// Left-compose with `∂ + A`: `L ↦ ∂∘L + A·L`, truncating at `∂^p`.
    fn lcompose_connection(&self, a: &RatMat) -> MatrixDiffOp {
        let p = self.ring.p.p() as usize;
        let mut coeffs = vec![RatMat::zeros(&self.ring, self.n, self.n); (self.coeffs.len() + 1).min(p)];
        for (i, b) in self.coeffs.iter().enumerate() {
            // ∂ ∘ B_i ∂^i = B_i ∂^{i+1} + B_i' ∂^i
            if i + 1 < p {
                coeffs[i + 1] = coeffs[i + 1].add(b);
            }
            coeffs[i] = coeffs[i].add(&b.deriv(self.var));
            coeffs[i] = coeffs[i].add(&a.mul(b));
        }
        MatrixDiffOp { ring: self.ring.clone(), var: self.var, n: self.n, coeffs }
    }
}

/// p-curvature of `∇ = ∂ + A` by literal p-fold composition in the matrix
/// operator ring; asserts that every `∂^{>=1}` coefficient vanishes.
pub fn pcurvature(conn: &MatrixConnection) -> Result<PCurvatureMatrix> {
    let p = conn.ring.p.p();
    let mut acc = MatrixDiffOp::identity(&conn.ring, conn.var, conn.rank());
    for _ in 0..p {
        acc = acc.lcompose_connection(&conn.a);
    }
    for (i, b) in acc.coeffs.iter().enumerate().skip(1) {
        if !b.is_zero() {
            return Err(Error::Verification(format!(
                "p-fold composition left a nonzero coefficient at order {i}; \
                 the chart does not satisfy ∂^p = 0"
            )));
        }
    }
    Ok(PCurvatureMatrix { psi: acc.coeffs[0].clone() })
}

/// Cross-check oracle: iterate `M ↦ ∂M + A·M` p times starting from the
/// identity. Tracks only the order-0 coefficient of the composition.
pub fn pcurvature_recurrence(conn: &MatrixConnection) -> RatMat {
    let p = conn.ring.p.p();
    let mut m = RatMat::identity(&conn.ring, conn.rank());
    for _ in 0..p {
        m = m.deriv(conn.var).add(&conn.a.mul(&m));
    }
    m
}

/// Dual companion matrix of a monic operator `D = ∂^n + q_1 ∂^{n-1} + … + q_n`:
/// top row `(-q_1, …, -q_n)`, subdiagonal 1s. The dual connection is
/// `∇^∨ = ∂ - C`, whose horizontal sections are `(∂^{n-1}y, …, ∂y, y)` for
/// solutions `y` of `D(y) = 0`.
pub fn dual_companion_matrix(d: &ScalarDiffOp) -> Result<RatMat> {
    let Order::Finite(n) = d.order() else {
        return Err(Error::NotMonic("zero operator has no companion".into()));
    };
    if n == 0 || !d.is_monic() {
        return Err(Error::NotMonic(format!("{d}")));
    }
    let ring = d.ring();
    let mut c = RatMat::zeros(ring, n, n);
    for j in 0..n {
        // q_{j+1} is the coefficient of ∂^{n-j-1}
        *c.get_mut(0, j) = d.coeff(n - j - 1).neg();
    }
    for i in 1..n {
        *c.get_mut(i, i - 1) = RatFunc::one(ring);
    }
    Ok(c)
}

/// Connection `∇^∨ = ∂ - C` for the dual companion matrix of `D`.
pub fn dual_companion_connection(d: &ScalarDiffOp) -> Result<MatrixConnection> {
    let c = dual_companion_matrix(d)?;
    MatrixConnection::new(d.ring(), d.var(), c.map(|x| x.neg()))
}

/// True iff the dual companion connection of `D` has vanishing p-curvature,
/// i.e. `D` has a full set of solutions.
pub fn full_solutions_check(d: &ScalarDiffOp) -> Result<bool> {
    let Order::Finite(n) = d.order() else {
        return Err(Error::NotMonic("zero operator".into()));
    };
    if n < 1 {
        return Err(Error::Invalid("order must be at least 1".into()));
    }
    let conn = dual_companion_connection(d)?;
    Ok(pcurvature(&conn)?.is_zero())
}

/// Report of the polynomial kernel oracle.
#[derive(Debug, Clone)]
pub struct KernelReport {
    /// Echelonized polynomial solutions up to the degree bound.
    pub basis: Vec<Poly>,
    /// Rank over `F_p[u^p]`: the number of distinct leading degrees mod p.
    pub rank: usize,
}

/// Solve `D(y) = 0` over polynomials of degree `<= bound` by exact linear
/// algebra on coefficient vectors. The rank may undercount when the bound
/// is too small; the default `n·p + max coefficient degree` covers all
/// shipped cases.
pub fn kernel_basis_oracle(d: &ScalarDiffOp, bound: usize) -> Result<KernelReport> {
    let ring = d.ring();
    let p = ring.p;
    let var = d.var();
    for c in d.coeffs() {
        if c.den_exponents().iter().any(|&e| e > 0) || c.num().min_exp(var) < 0 {
            return Err(Error::Invalid(
                "kernel oracle requires polynomial coefficients".into(),
            ));
        }
    }
    let max_coeff_deg = d
        .coeffs()
        .iter()
        .map(|c| c.num().max_exp(var).max(0) as usize)
        .max()
        .unwrap_or(0);
    let out_dim = bound + max_coeff_deg + 1;
    let mut m = FpMat::zeros(p, out_dim, bound + 1);
    for j in 0..=bound {
        let mono = RatFunc::from_poly(ring, Poly::var_pow(p, ring.nvars(), var, j as i32));
        let img = d.apply(&mono);
        for (mon, &c) in img.num().terms() {
            let e = mon.0[var];
            assert!(e >= 0, "polynomial image expected");
            if (e as usize) < out_dim {
                m.set(e as usize, j, c);
            }
        }
    }
    let kernel = m.kernel_basis();
    // Echelonize by leading degree and count distinct residues mod p.
    let mut basis: Vec<Poly> = kernel
        .into_iter()
        .map(|v| {
            let mut poly = Poly::zero(p, ring.nvars());
            for (j, &c) in v.iter().enumerate() {
                if c != 0 {
                    poly.add_term(
                        crate::ffalg::Monomial({
                            let mut e = vec![0; ring.nvars()];
                            e[var] = j as i32;
                            e
                        }),
                        c,
                    );
                }
            }
            poly
        })
        .collect();
    basis.sort_by_key(|q| q.max_exp(var));
    let mut residues = std::collections::BTreeSet::new();
    for q in &basis {
        residues.insert(q.max_exp(var).rem_euclid(p.p() as i32));
    }
    Ok(KernelReport { basis, rank: residues.len() })
}

/// Default oracle degree bound: `n·p + max coefficient degree`.
pub fn default_kernel_bound(d: &ScalarDiffOp) -> usize {
    let n = match d.order() {
        Order::Finite(n) => n,
        Order::NegInfinity => 0,
    };
    let max_deg = d
        .coeffs()
        .iter()
        .map(|c| c.num().max_exp(d.var()).max(0) as usize)
        .max()
        .unwrap_or(0);
    n * d.ring().p.p() as usize + max_deg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffalg::PrimeModulus;

    fn chart(p: u64) -> Arc<ChartRing> {
        ChartRing::localized(PrimeModulus::new(p).unwrap(), &["u"], &["u"])
    }

    fn d(ring: &Arc<ChartRing>) -> ScalarDiffOp {
        ScalarDiffOp::derivation(ring, 0)
    }

    fn u(ring: &Arc<ChartRing>) -> RatFunc {
        RatFunc::var(ring, "u").unwrap()
    }

    #[test]
    fn compose_examples() {
        let ring = chart(5);
        let dd = d(&ring);
        let mu = ScalarDiffOp::mult(&u(&ring), 0);
        // ∂ ∘ u = u∂ + 1
        let c = dd.compose(&mu).unwrap();
        assert_eq!(c.coeff(0), RatFunc::one(&ring));
        assert_eq!(c.coeff(1), u(&ring));
        // ∂ ∘ ∂ = ∂²
        let c2 = dd.compose(&dd).unwrap();
        assert_eq!(c2.order(), Order::Finite(2));
        assert!(c2.coeff(0).is_zero() && c2.coeff(1).is_zero());
        assert_eq!(c2.coeff(2), RatFunc::one(&ring));
        // (∂ + u)(∂ - u) = ∂² - u² - 1   [hand Leibniz oracle]
        let dpu = dd.add(&mu);
        let dmu = dd.sub(&mu);
        let prod = dpu.compose(&dmu).unwrap();
        let expect = ScalarDiffOp::new(
            &ring,
            0,
            vec![
                u(&ring).mul(&u(&ring)).neg().sub(&RatFunc::one(&ring)),
                RatFunc::zero(&ring),
                RatFunc::one(&ring),
            ],
        )
        .unwrap();
        assert_eq!(prod, expect);
        // order overflow rejected
        let d4 = c2.compose(&c2).unwrap();
        assert!(matches!(
            d4.compose(&dd),
            Err(Error::OrderOverflow(5, 5))
        ));
    }

    #[test]
    fn transpose_examples() {
        let ring = chart(5);
        let dd = d(&ring);
        // ᵗ∂ = -∂
        assert_eq!(dd.transpose(), dd.neg());
        // order 0 fixed
        let m = ScalarDiffOp::mult(&u(&ring), 0);
        assert_eq!(m.transpose(), m);
        // D = ∂² + q1 ∂ + q0 with q1 = u², q0 = u:
        // ᵗD = ∂² - q1 ∂ + (q0 - q1')   [compose oracle]
        let q1 = u(&ring).mul(&u(&ring));
        let q0 = u(&ring);
        let dop = ScalarDiffOp::monic(&ring, 0, &[q1.clone(), q0.clone()]).unwrap();
        let t = dop.transpose();
        let oracle = {
            // (-∂)² ∘ 1 + (-∂) ∘ q1 + q0
            let d2 = dd.compose(&dd).unwrap();
            let t1 = dd.compose(&ScalarDiffOp::mult(&q1, 0)).unwrap().neg();
            d2.add(&t1).add(&ScalarDiffOp::mult(&q0, 0))
        };
        assert_eq!(t, oracle);
        assert_eq!(t.coeff(1), q1.neg());
        assert_eq!(t.coeff(0), q0.sub(&q1.deriv(0)));
        // involution and anti-homomorphism on a sample
        assert_eq!(dop.transpose().transpose(), dop);
        let e = dd.add(&ScalarDiffOp::mult(&q0, 0));
        let lhs = dop.compose(&e).unwrap().transpose();
        let rhs = e.transpose().compose(&dop.transpose()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn symbol_examples() {
        let ring = chart(5);
        let q1 = u(&ring);
        let q0 = u(&ring).mul(&u(&ring));
        let dop = ScalarDiffOp::monic(&ring, 0, &[q1.clone(), q0]).unwrap();
        assert_eq!(dop.principal_symbol(), RatFunc::one(&ring));
        // Σ_sub(∂² + q1∂ + q0) = q1
        assert_eq!(dop.subprincipal_symbol().unwrap(), q1);
        // Σ_sub(∂²) = 0
        let d2 = ScalarDiffOp::monic(&ring, 0, &[RatFunc::zero(&ring), RatFunc::zero(&ring)])
            .unwrap();
        assert!(d2.subprincipal_symbol().unwrap().is_zero());
        // n = 3: D = ∂³ + r∂ with r = u²: D' = ½(D + ᵗD) = -u, order 0 <= 2,
        // so the ∂²-coefficient (the subprincipal symbol) vanishes.
        let r = u(&ring).mul(&u(&ring));
        let d3 = ScalarDiffOp::monic(&ring, 0, &[RatFunc::zero(&ring), r, RatFunc::zero(&ring)])
            .unwrap();
        let dprime = d3.half_antisymmetrization();
        assert_eq!(dprime.order(), Order::Finite(0));
        assert_eq!(dprime.coeff(0), u(&ring).neg());
        assert!(d3.subprincipal_symbol().unwrap().is_zero());
        // non-monic rejected
        let two_d = ScalarDiffOp::new(
            &ring,
            0,
            vec![RatFunc::zero(&ring), RatFunc::constant(&ring, 2)],
        )
        .unwrap();
        assert!(two_d.subprincipal_symbol().is_err());
    }

    #[test]
    fn pcurvature_examples() {
        let ring = chart(5);
        // constant nilpotent: ψ = A^p = 0
        let mut a = RatMat::zeros(&ring, 2, 2);
        *a.get_mut(1, 0) = RatFunc::one(&ring);
        let conn = MatrixConnection::new(&ring, 0, a).unwrap();
        assert!(pcurvature(&conn).unwrap().is_zero());
        // scalar constant c: ψ = c^p
        let c = RatMat::from_rows(vec![vec![RatFunc::constant(&ring, 2)]]);
        let conn = MatrixConnection::new(&ring, 0, c).unwrap();
        let psi = pcurvature(&conn).unwrap();
        assert_eq!(*psi.psi.get(0, 0), RatFunc::constant(&ring, 32));
        // scalar A = u: composition vs the recurrence oracle
        let a = RatMat::from_rows(vec![vec![u(&ring)]]);
        let conn = MatrixConnection::new(&ring, 0, a).unwrap();
        let psi = pcurvature(&conn).unwrap();
        let oracle = pcurvature_recurrence(&conn);
        assert_eq!(psi.psi, oracle);
        // (∂ + u)^5 = ∂^5 + u^5 on chart rings, so ψ = u^5
        assert_eq!(*psi.psi.get(0, 0), u(&ring).pow(5));
    }

    #[test]
    fn psi_commutes_with_pth_powers() {
        let ring = chart(5);
        // ψ is F_p[u^p]-linear: as the order-0 part of an operator it is a
        // matrix of functions, and conjugating by u^p changes nothing.
        let a = RatMat::from_rows(vec![
            vec![u(&ring), RatFunc::one(&ring)],
            vec![RatFunc::zero(&ring), u(&ring).neg()],
        ]);
        let conn = MatrixConnection::new(&ring, 0, a).unwrap();
        let psi = pcurvature(&conn).unwrap().psi;
        let up = u(&ring).pow(5);
        // (ψ · u^p v) = u^p (ψ v) entrywise
        assert_eq!(psi.scale(&up), psi.map(|x| x.mul(&up)));
    }

    #[test]
    fn full_solutions_examples() {
        let ring = chart(5);
        // D = ∂²: dormant
        let d2 = ScalarDiffOp::monic(&ring, 0, &[RatFunc::zero(&ring), RatFunc::zero(&ring)])
            .unwrap();
        assert!(full_solutions_check(&d2).unwrap());
        // D = ∂ - 1: ψ = (-1)^p = -1, not dormant
        let dm1 = ScalarDiffOp::monic(&ring, 0, &[RatFunc::constant(&ring, -1)]).unwrap();
        assert!(!full_solutions_check(&dm1).unwrap());
        let conn = dual_companion_connection(&dm1).unwrap();
        let psi = pcurvature(&conn).unwrap();
        assert_eq!(*psi.psi.get(0, 0), RatFunc::constant(&ring, -1));
        // D = ∂² + 1: cross-checked against the kernel oracle
        let dp1 = ScalarDiffOp::monic(&ring, 0, &[RatFunc::zero(&ring), RatFunc::one(&ring)])
            .unwrap();
        let full = full_solutions_check(&dp1).unwrap();
        let rank = kernel_basis_oracle(&dp1, default_kernel_bound(&dp1)).unwrap().rank;
        assert_eq!(full, rank == 2);
        assert!(!full);
    }

    #[test]
    fn kernel_oracle_examples() {
        let ring = chart(5);
        let d2 = ScalarDiffOp::monic(&ring, 0, &[RatFunc::zero(&ring), RatFunc::zero(&ring)])
            .unwrap();
        let rep = kernel_basis_oracle(&d2, 10).unwrap();
        assert_eq!(rep.rank, 2);
        // direct substitution: D(u^5) = 20 u^3 = 0
        let u5 = RatFunc::from_poly(&ring, Poly::var_pow(ring.p, 1, 0, 5));
        assert!(d2.apply(&u5).is_zero());
        // D = ∂ - 1: no polynomial solutions below the bound
        let dm1 = ScalarDiffOp::monic(&ring, 0, &[RatFunc::constant(&ring, -1)]).unwrap();
        assert_eq!(kernel_basis_oracle(&dm1, 10).unwrap().rank, 0);
        // D = ∂: constants
        let dd = ScalarDiffOp::monic(&ring, 0, &[RatFunc::zero(&ring)]).unwrap();
        assert_eq!(kernel_basis_oracle(&dd, 10).unwrap().rank, 1);
    }

    #[test]
    fn companion_matrix_shape() {
        let ring = chart(5);
        let q0 = u(&ring);
        let dop = ScalarDiffOp::monic(&ring, 0, &[RatFunc::zero(&ring), q0.clone()]).unwrap();
        let c = dual_companion_matrix(&dop).unwrap();
        assert!(c.get(0, 0).is_zero());
        assert_eq!(*c.get(0, 1), q0.neg());
        assert_eq!(*c.get(1, 0), RatFunc::one(&ring));
        assert!(c.get(1, 1).is_zero());
        // fundamental solution columns: for D(y) = 0, (y', y) is horizontal
        // for ∇^∨ = ∂ - C. Take D = ∂², y = u.
        let d2 = ScalarDiffOp::monic(&ring, 0, &[RatFunc::zero(&ring), RatFunc::zero(&ring)])
            .unwrap();
        let conn = dual_companion_connection(&d2).unwrap();
        let v = vec![RatFunc::one(&ring), u(&ring)];
        let dv = conn.apply(&v);
        assert!(dv.iter().all(|x| x.is_zero()));
    }
}
