//! Multivariate Laurent polynomials over `F_p`.
//!
//! Exponents are signed: a variable may carry negative powers when the
//! ambient chart ring inverts it. Terms are kept in a `BTreeMap` under
//! graded-lex order, which makes printing canonical.

use std::collections::BTreeMap;
use std::fmt;

use super::PrimeModulus;

/// Exponent vector; one entry per chart variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<i32>);

impl Monomial {
    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// A multivariate Laurent polynomial with coefficients in `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    pub p: PrimeModulus,
    pub nvars: usize,
    terms: BTreeMap<Monomial, u64>,
}

impl Poly {
    pub fn zero(p: PrimeModulus, nvars: usize) -> Self {
        Poly { p, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(p: PrimeModulus, nvars: usize, c: i64) -> Self {
        let mut poly = Poly::zero(p, nvars);
        poly.add_term(Monomial(vec![0; nvars]), p.reduce_i64(c));
        poly
    }

    pub fn one(p: PrimeModulus, nvars: usize) -> Self {
        Poly::constant(p, nvars, 1)
    }

    /// The monomial `var^exp`.
    pub fn var_pow(p: PrimeModulus, nvars: usize, var: usize, exp: i32) -> Self {
        assert!(var < nvars);
        let mut m = vec![0; nvars];
        m[var] = exp;
        let mut poly = Poly::zero(p, nvars);
        poly.add_term(Monomial(m), 1);
        poly
    }

    pub fn var(p: PrimeModulus, nvars: usize, var: usize) -> Self {
        Poly::var_pow(p, nvars, var, 1)
    }

    pub fn monomial(p: PrimeModulus, exps: Vec<i32>, coeff: i64) -> Self {
        let nvars = exps.len();
        let mut poly = Poly::zero(p, nvars);
        poly.add_term(Monomial(exps), p.reduce_i64(coeff));
        poly
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// The constant term (zero monomial coefficient).
    pub fn constant_term(&self) -> u64 {
        self.terms
            .get(&Monomial(vec![0; self.nvars]))
            .copied()
            .unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &u64)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, m: Monomial, c: u64) {
        debug_assert_eq!(m.0.len(), self.nvars);
        if c == 0 {
            return;
        }
        let key = m.clone();
        let entry = self.terms.entry(m).or_insert(0);
        *entry = self.p.add(*entry, c);
        if *entry == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.check_compat(other);
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        let mut out = Poly::zero(self.p, self.nvars);
        for (m, &c) in &self.terms {
            out.add_term(m.clone(), self.p.neg(c));
        }
        out
    }

    pub fn scale(&self, c: u64) -> Poly {
        let c = c % self.p.p();
        let mut out = Poly::zero(self.p, self.nvars);
        for (m, &v) in &self.terms {
            out.add_term(m.clone(), self.p.mul(v, c));
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.check_compat(other);
        let mut out = Poly::zero(self.p, self.nvars);
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &other.terms {
                out.add_term(ma.mul(mb), self.p.mul(ca, cb));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.p, self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Divided-power (Hasse) derivative `∂^{[k]}` in `var`, acting
    /// monomial-wise by the generalized binomial `C(m, k)`.
    pub fn hasse(&self, var: usize, k: u32) -> Poly {
        assert!(var < self.nvars);
        let mut out = Poly::zero(self.p, self.nvars);
        for (m, &c) in &self.terms {
            let e = m.0[var] as i64;
            let b = self.p.binomial_generalized(e, k as u64);
            if b == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] -= k as i32;
            out.add_term(Monomial(exps), self.p.mul(c, b));
        }
        out
    }

    /// Plain first derivative in `var`.
    pub fn deriv(&self, var: usize) -> Poly {
        let mut out = Poly::zero(self.p, self.nvars);
        for (m, &c) in &self.terms {
            let e = m.0[var] as i64;
            let coef = self.p.mul(c, self.p.reduce_i64(e));
            if coef == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] -= 1;
            out.add_term(Monomial(exps), coef);
        }
        out
    }

    /// Decomposition `f = Σ_a h_a(var^p) · var^a`, `0 <= a < p`.
    ///
    /// The returned `h_a` are expressed in the original variable, i.e.
    /// `h_a` here satisfies `h_a(var) = h_a` and the reconstruction
    /// substitutes `var^p` for `var`.
    pub fn pth_decompose(&self, var: usize) -> Vec<Poly> {
        let p = self.p.p() as i64;
        let mut out = vec![Poly::zero(self.p, self.nvars); p as usize];
        for (m, &c) in &self.terms {
            let e = m.0[var] as i64;
            let a = e.rem_euclid(p);
            let s = (e - a) / p;
            let mut exps = m.0.clone();
            exps[var] = s as i32;
            out[a as usize].add_term(Monomial(exps), c);
        }
        out
    }

    /// Substitute `var^p` for `var` (inverse companion of `pth_decompose`).
    pub fn frobenius_var(&self, var: usize) -> Poly {
        let mut out = Poly::zero(self.p, self.nvars);
        for (m, &c) in &self.terms {
            let mut exps = m.0.clone();
            exps[var] *= self.p.p() as i32;
            out.add_term(Monomial(exps), c);
        }
        out
    }

    /// True if every exponent of `var` is divisible by p (a chart-level
    /// "constant": annihilated by d/d var).
    pub fn is_horizontal(&self, var: usize) -> bool {
        let p = self.p.p() as i32;
        self.terms.keys().all(|m| m.0[var].rem_euclid(p) == 0)
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] != 0)
    }

    pub fn min_exp(&self, var: usize) -> i32 {
        self.terms.keys().map(|m| m.0[var]).min().unwrap_or(0)
    }

    pub fn max_exp(&self, var: usize) -> i32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// Multiply by `var^k` (k may be negative).
    pub fn shift_var(&self, var: usize, k: i32) -> Poly {
        let mut out = Poly::zero(self.p, self.nvars);
        for (m, &c) in &self.terms {
            let mut exps = m.0.clone();
            exps[var] += k;
            out.add_term(Monomial(exps), c);
        }
        out
    }

    /// True when only the listed variables occur.
    pub fn supported_on(&self, vars: &[usize]) -> bool {
        self.terms
            .keys()
            .all(|m| m.0.iter().enumerate().all(|(i, &e)| e == 0 || vars.contains(&i)))
    }

    /// Exact division in the Laurent ring: returns `q` with `self = q * d`,
    /// or `None` when no such Laurent polynomial exists.
    ///
    /// Both operands are first shifted into the plain polynomial ring; there
    /// the exact quotient (when it exists) keeps the leading term of every
    /// partial remainder divisible by the leading term of `d`, so a failed
    /// monomial division is a definitive "no".
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        self.check_compat(d);
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero(self.p, self.nvars));
        }
        // Monomials are units here, so strip the divisor's monomial content
        // and push the dividend into the plain polynomial ring.
        let mut rem = self.clone();
        let mut div = d.clone();
        let mut shift = vec![0i32; self.nvars];
        for v in 0..self.nvars {
            let s_rem = rem.min_exp(v);
            let s_div = div.min_exp(v);
            rem = rem.shift_var(v, -s_rem);
            div = div.shift_var(v, -s_div);
            shift[v] = s_rem - s_div;
        }
        let (dm, dc) = {
            let (m, c) = div.terms.iter().next_back().unwrap();
            (m.clone(), *c)
        };
        let dc_inv = self.p.inv(dc);
        let mut quot = Poly::zero(self.p, self.nvars);
        while !rem.is_zero() {
            let (rm, rc) = {
                let (m, c) = rem.terms.iter().next_back().unwrap();
                (m.clone(), *c)
            };
            if rm.0.iter().zip(&dm.0).any(|(a, b)| a < b) {
                return None;
            }
            let exps: Vec<i32> = rm.0.iter().zip(&dm.0).map(|(a, b)| a - b).collect();
            let qterm = Poly::monomial(self.p, exps, self.p.mul(rc, dc_inv) as i64);
            rem = rem.sub(&qterm.mul(&div));
            quot = quot.add(&qterm);
        }
        for v in 0..self.nvars {
            quot = quot.shift_var(v, shift[v]);
        }
        Some(quot)
    }

    /// Substitute polynomials for every variable simultaneously.
    /// All exponents must be nonnegative (no Laurent terms).
    pub fn substitute_all(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let nv_out = images.first().map(|q| q.nvars).unwrap_or(0);
        let mut out = Poly::zero(self.p, nv_out);
        for (m, &c) in &self.terms {
            let mut term = Poly::constant(self.p, nv_out, c as i64);
            for (i, &e) in m.0.iter().enumerate() {
                assert!(e >= 0, "substitute_all requires nonnegative exponents");
                term = term.mul(&images[i].pow(e as u32));
            }
            out = out.add(&term);
        }
        out
    }

    /// Widen the variable list: produce the same polynomial over `nvars`
    /// variables with `map[i]` giving the new index of old variable `i`.
    pub fn remap_vars(&self, nvars: usize, map: &[usize]) -> Poly {
        assert_eq!(map.len(), self.nvars);
        let mut out = Poly::zero(self.p, nvars);
        for (m, &c) in &self.terms {
            let mut exps = vec![0; nvars];
            for (i, &e) in m.0.iter().enumerate() {
                exps[map[i]] = e;
            }
            out.add_term(Monomial(exps), c);
        }
        out
    }

    fn check_compat(&self, other: &Poly) {
        assert_eq!(self.p, other.p, "modulus mismatch");
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
    }

    /// Canonical text form using the given variable names; terms in
    /// descending graded-lex order, coefficients in `0..p-1`.
    pub fn display(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, &c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            if c != 1 || m.is_one() {
                factors.push(c.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if e == 1 {
                    factors.push(names[i].clone());
                } else {
                    factors.push(format!("{}^{}", names[i], e));
                }
            }
            parts.push(factors.join("*"));
        }
        parts.join(" + ")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("v{i}")).collect();
        write!(f, "{}", self.display(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p5() -> PrimeModulus {
        PrimeModulus::new(5).unwrap()
    }

    #[test]
    fn hasse_examples() {
        let p = p5();
        // ∂^{[2]} u^2 = 1
        let u2 = Poly::var_pow(p, 1, 0, 2);
        assert_eq!(u2.hasse(0, 2), Poly::one(p, 1));
        // ∂^{[5]} u^5 = 1 while ∂^5 u^5 = 0
        let u5 = Poly::var_pow(p, 1, 0, 5);
        assert_eq!(u5.hasse(0, 5), Poly::one(p, 1));
        let mut iter5 = u5.clone();
        for _ in 0..5 {
            iter5 = iter5.deriv(0);
        }
        assert!(iter5.is_zero());
        // ∂^{[5]} u^6 = C(6,5) u = u
        let u6 = Poly::var_pow(p, 1, 0, 6);
        assert_eq!(u6.hasse(0, 5), Poly::var(p, 1, 0));
    }

    #[test]
    fn pth_decompose_examples() {
        let p = p5();
        // u^7 = (u^5)^1 * u^2
        let u7 = Poly::var_pow(p, 1, 0, 7);
        let comps = u7.pth_decompose(0);
        assert_eq!(comps[2], Poly::var(p, 1, 0));
        for (a, h) in comps.iter().enumerate() {
            if a != 2 {
                assert!(h.is_zero());
            }
        }
        // 1 + u
        let f = Poly::one(p, 1).add(&Poly::var(p, 1, 0));
        let comps = f.pth_decompose(0);
        assert_eq!(comps[0], Poly::one(p, 1));
        assert_eq!(comps[1], Poly::one(p, 1));
        // u^{-6} = (u^5)^{-2} * u^4
        let um6 = Poly::var_pow(p, 1, 0, -6);
        let comps = um6.pth_decompose(0);
        assert_eq!(comps[4], Poly::var_pow(p, 1, 0, -2));
        // reconstruction
        let rec = comps
            .iter()
            .enumerate()
            .map(|(a, h)| h.frobenius_var(0).shift_var(0, a as i32))
            .fold(Poly::zero(p, 1), |acc, t| acc.add(&t));
        assert_eq!(rec, um6);
    }

    #[test]
    fn exact_division() {
        let p = p5();
        let u = Poly::var(p, 1, 0);
        let one = Poly::one(p, 1);
        let up1 = u.add(&one);
        let prod = up1.mul(&up1).mul(&u);
        let q = prod.exact_div(&up1).unwrap();
        assert_eq!(q, up1.mul(&u));
        // not divisible by an honest non-unit factor
        let up2 = u.add(&Poly::constant(p, 1, 2));
        assert!(up1.exact_div(&up2).is_none());
        // monomials are units of the Laurent ring
        let q = up1.exact_div(&u).unwrap();
        assert_eq!(q, one.add(&Poly::var_pow(p, 1, 0, -1)));
    }

    #[test]
    fn display_is_graded_lex() {
        let p = p5();
        let names = vec!["u".to_string(), "y".to_string()];
        let mut f = Poly::zero(p, 2);
        f.add_term(Monomial(vec![1, 0]), 2);
        f.add_term(Monomial(vec![0, 2]), 1);
        f.add_term(Monomial(vec![0, 0]), 3);
        assert_eq!(f.display(&names), "y^2 + 2*u + 3");
    }
}
