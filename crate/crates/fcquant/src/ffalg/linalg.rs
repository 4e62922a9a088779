//! Exact linear algebra: dense matrices over `F_p` and Gaussian
//! elimination over the fraction field of a chart ring.

use std::sync::Arc;

use super::poly::Poly;
use super::ratfunc::{ChartRing, RatFunc};
use super::PrimeModulus;
use crate::error::{Error, Result};

/// Dense matrix over `F_p`, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMat {
    pub p: PrimeModulus,
    pub rows: usize,
    pub cols: usize,
    data: Vec<u64>,
}

impl FpMat {
    pub fn zeros(p: PrimeModulus, rows: usize, cols: usize) -> Self {
        FpMat { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(p: PrimeModulus, rows: Vec<Vec<u64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row.into_iter().map(|v| v % p.p()));
        }
        FpMat { p, rows: r, cols: c, data }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p.p();
    }

    /// In-place reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row >= self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            self.swap_rows(row, pr);
            let inv = p.inv(self.get(row, col));
            for j in col..self.cols {
                let v = p.mul(self.get(row, j), inv);
                self.set(row, j, v);
            }
            for r in 0..self.rows {
                if r != row && self.get(r, col) != 0 {
                    let f = self.get(r, col);
                    for j in col..self.cols {
                        let v = p.sub(self.get(r, j), p.mul(f, self.get(row, j)));
                        self.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let (x, y) = (self.get(a, j), self.get(b, j));
            self.set(a, j, y);
            self.set(b, j, x);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::new();
        for &f in &free {
            let mut v = vec![0u64; self.cols];
            v[f] = 1;
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = self.p.neg(m.get(ri, f));
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `A x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(b.len(), self.rows);
        let p = self.p;
        let mut aug = FpMat::zeros(p, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i] % p.p());
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![0u64; self.cols];
        for (ri, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(ri, self.cols);
        }
        Some(x)
    }
}

/// An unrestricted quotient of chart polynomials, used internally by the
/// fraction-field elimination. Unlike `RatFunc` the denominator is an
/// arbitrary nonzero polynomial.
#[derive(Debug, Clone)]
pub struct Frac {
    pub num: Poly,
    pub den: Poly,
}

impl Frac {
    pub fn from_ratfunc(f: &RatFunc) -> Self {
        Frac { num: f.num().clone(), den: f.den_poly() }
    }

    pub fn zero(p: PrimeModulus, nvars: usize) -> Self {
        Frac { num: Poly::zero(p, nvars), den: Poly::one(p, nvars) }
    }

    pub fn one(p: PrimeModulus, nvars: usize) -> Self {
        Frac { num: Poly::one(p, nvars), den: Poly::one(p, nvars) }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Frac) -> Frac {
        Frac {
            num: self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            den: self.den.mul(&o.den),
        }
        .trim()
    }

    pub fn sub(&self, o: &Frac) -> Frac {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Frac {
        Frac { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &Frac) -> Frac {
        Frac { num: self.num.mul(&o.num), den: self.den.mul(&o.den) }.trim()
    }

    pub fn div(&self, o: &Frac) -> Frac {
        assert!(!o.is_zero(), "division by zero fraction");
        Frac { num: self.num.mul(&o.den), den: self.den.mul(&o.num) }.trim()
    }

    pub fn eq_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn equals(&self, o: &Frac) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }

    /// Cheap normalization: cancel an exact polynomial factor when the
    /// denominator divides the numerator (or vice versa), and normalize
    /// the zero fraction. Keeps intermediate sizes in check without a
    /// full multivariate gcd.
    fn trim(self) -> Frac {
        if self.num.is_zero() {
            return Frac::zero(self.num.p, self.num.nvars);
        }
        if let Some(q) = self.num.exact_div(&self.den) {
            return Frac { num: q, den: Poly::one(self.num.p, self.num.nvars) };
        }
        if self.den.num_terms() == 1 {
            // denominator is a monomial: fold into a Laurent numerator
            if let Some(q) = self.num.exact_div(&self.den) {
                return Frac { num: q, den: Poly::one(self.num.p, self.num.nvars) };
            }
        }
        self
    }

    /// Convert back to a chart function when the denominator is a unit.
    pub fn into_ratfunc(self, ring: &Arc<ChartRing>) -> Result<RatFunc> {
        let den = RatFunc::from_poly(ring, self.den);
        let inv = den.try_inverse()?;
        Ok(RatFunc::from_poly(ring, self.num).mul(&inv))
    }
}

/// Matrix of chart functions.
#[derive(Debug, Clone, PartialEq)]
pub struct RatMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<RatFunc>,
}

impl RatMat {
    pub fn from_rows(rows: Vec<Vec<RatFunc>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row);
        }
        RatMat { rows: r, cols: c, data }
    }

    pub fn zeros(ring: &Arc<ChartRing>, rows: usize, cols: usize) -> Self {
        RatMat {
            rows,
            cols,
            data: vec![RatFunc::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: &Arc<ChartRing>, n: usize) -> Self {
        let mut m = RatMat::zeros(ring, n, n);
        for i in 0..n {
            *m.get_mut(i, i) = RatFunc::one(ring);
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut RatFunc {
        &mut self.data[i * self.cols + j]
    }

    pub fn map<F: Fn(&RatFunc) -> RatFunc>(&self, f: F) -> RatMat {
        RatMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn add(&self, o: &RatMat) -> RatMat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        RatMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn mul(&self, o: &RatMat) -> RatMat {
        assert_eq!(self.cols, o.rows);
        let ring = self.data[0].ring().clone();
        let mut out = RatMat::zeros(&ring, self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = RatFunc::zero(&ring);
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(o.get(k, j)));
                }
                *out.get_mut(i, j) = acc;
            }
        }
        out
    }

    pub fn scale(&self, c: &RatFunc) -> RatMat {
        self.map(|x| x.mul(c))
    }

    pub fn transpose(&self) -> RatMat {
        let ring = self.data[0].ring().clone();
        let mut out = RatMat::zeros(&ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.get_mut(j, i) = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn deriv(&self, var: usize) -> RatMat {
        self.map(|x| x.deriv(var))
    }

    pub fn determinant(&self) -> RatFunc {
        assert_eq!(self.rows, self.cols);
        let ring = self.data[0].ring().clone();
        det_rec(&ring, &(0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect())
            .collect::<Vec<Vec<_>>>())
    }
}

fn det_rec(ring: &Arc<ChartRing>, m: &[Vec<RatFunc>]) -> RatFunc {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = RatFunc::zero(ring);
    for col in 0..n {
        if m[0][col].is_zero() {
            continue;
        }
        let mut minor = Vec::with_capacity(n - 1);
        for row in m.iter().skip(1) {
            let mut r = row.clone();
            r.remove(col);
            minor.push(r);
        }
        let term = m[0][col].mul(&det_rec(ring, &minor));
        acc = if col % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Result of `solve_linear`: a particular solution over the fraction field
/// (when the system is consistent) and a kernel basis cleared of
/// denominators, i.e. scaled back into the chart ring.
#[derive(Debug, Clone)]
pub struct LinearSolution {
    pub particular: Vec<Frac>,
    pub kernel: Vec<Vec<RatFunc>>,
    pub rank: usize,
}

/// Exact reduced-echelon solve of `A x = b` over the fraction field of the
/// chart ring. Signals inconsistent systems.
pub fn solve_linear(a: &RatMat, b: &[RatFunc]) -> Result<LinearSolution> {
    assert_eq!(b.len(), a.rows);
    let ring = if a.rows * a.cols > 0 {
        a.get(0, 0).ring().clone()
    } else {
        b[0].ring().clone()
    };
    let p = ring.p;
    let nv = ring.nvars();
    let rows = a.rows;
    let cols = a.cols;
    let mut m: Vec<Vec<Frac>> = (0..rows)
        .map(|i| {
            let mut row: Vec<Frac> = (0..cols).map(|j| Frac::from_ratfunc(a.get(i, j))).collect();
            row.push(Frac::from_ratfunc(&b[i]));
            row
        })
        .collect();

    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0usize;
    for col in 0..cols {
        if row >= rows {
            break;
        }
        let Some(pr) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, pr);
        let inv = Frac::one(p, nv).div(&m[row][col].clone());
        for j in col..=cols {
            m[row][j] = m[row][j].mul(&inv);
        }
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in col..=cols {
                    let t = f.mul(&m[row][j]);
                    m[r][j] = m[r][j].sub(&t);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }

    // Inconsistency: a zero row with nonzero rhs.
    for r in row..rows {
        if m[r][..cols].iter().all(|x| x.is_zero()) && !m[r][cols].is_zero() {
            return Err(Error::InconsistentSystem);
        }
    }

    let mut particular = vec![Frac::zero(p, nv); cols];
    for (ri, &pc) in pivots.iter().enumerate() {
        particular[pc] = m[ri][cols].clone();
    }

    // Kernel basis over the fraction field, then cleared of denominators.
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut kernel = Vec::new();
    for &f in &free {
        let mut v = vec![Frac::zero(p, nv); cols];
        v[f] = Frac::one(p, nv);
        for (ri, &pc) in pivots.iter().enumerate() {
            v[pc] = m[ri][f].neg();
        }
        let mut den = Poly::one(p, nv);
        for x in &v {
            if !x.is_zero() {
                den = den.mul(&x.den);
            }
        }
        let cleared: Vec<RatFunc> = v
            .iter()
            .map(|x| {
                let scaled = x.num.mul(&den.exact_div(&x.den).unwrap_or_else(|| {
                    // fall back to multiplying out; den is a multiple of x.den
                    // by construction, so this branch should not be reached
                    panic!("kernel denominator clearing failed")
                }));
                RatFunc::from_poly(&ring, scaled)
            })
            .collect();
        kernel.push(cleared);
    }

    Ok(LinearSolution { particular, kernel, rank: pivots.len() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p5() -> PrimeModulus {
        PrimeModulus::new(5).unwrap()
    }

    #[test]
    fn fp_rref_and_kernel() {
        let p = p5();
        let m = FpMat::from_rows(p, vec![vec![1, 1], vec![2, 2]]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        // span{(1, -1)} up to scaling
        let v = &k[0];
        assert_eq!(p.add(v[0], v[1]).rem_euclid(p.p()), (v[0] + v[1]) % p.p());
        assert_eq!((v[0] + v[1]) % p.p(), 0);
    }

    #[test]
    fn solve_identity() {
        let p = p5();
        let ring = ChartRing::localized(p, &["u"], &["u"]);
        let a = RatMat::identity(&ring, 2);
        let b = vec![RatFunc::one(&ring), RatFunc::zero(&ring)];
        let sol = solve_linear(&a, &b).unwrap();
        assert!(sol.particular[0].equals(&Frac::one(p, 1)));
        assert!(sol.particular[1].is_zero());
        assert!(sol.kernel.is_empty());
    }

    #[test]
    fn kernel_over_fraction_field() {
        let p = p5();
        let ring = ChartRing::localized(p, &["u"], &["u"]);
        let one = RatFunc::one(&ring);
        let two = RatFunc::constant(&ring, 2);
        let a = RatMat::from_rows(vec![
            vec![one.clone(), one.clone()],
            vec![two.clone(), two.clone()],
        ]);
        let sol = solve_linear(&a, &[RatFunc::zero(&ring), RatFunc::zero(&ring)]).unwrap();
        assert_eq!(sol.kernel.len(), 1);
        let v = &sol.kernel[0];
        assert_eq!(v[0].add(&v[1]), RatFunc::zero(&ring));
        assert!(!v[0].is_zero());
    }

    #[test]
    fn full_rank_triangular_kernel_is_trivial() {
        let p = p5();
        let ring = ChartRing::localized(p, &["u"], &["u"]);
        let u = RatFunc::var(&ring, "u").unwrap();
        let a = RatMat::from_rows(vec![
            vec![u.clone(), RatFunc::one(&ring)],
            vec![RatFunc::zero(&ring), u.clone()],
        ]);
        // det = u^2 != 0, so the kernel is trivial
        assert_eq!(a.determinant(), u.mul(&u));
        let sol = solve_linear(&a, &[RatFunc::zero(&ring), RatFunc::zero(&ring)]).unwrap();
        assert!(sol.kernel.is_empty());
        assert_eq!(sol.rank, 2);
    }

    #[test]
    fn inconsistent_system_signals() {
        let p = p5();
        let ring = ChartRing::localized(p, &["u"], &["u"]);
        let one = RatFunc::one(&ring);
        let a = RatMat::from_rows(vec![vec![one.clone()], vec![one.clone()]]);
        let b = vec![RatFunc::one(&ring), RatFunc::constant(&ring, 2)];
        assert!(matches!(solve_linear(&a, &b), Err(Error::InconsistentSystem)));
    }
}
