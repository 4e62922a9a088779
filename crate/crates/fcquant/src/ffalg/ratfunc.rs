//! Chart rings and localized rational functions.
//!
//! A chart ring is a polynomial ring over `F_p` in named coordinates,
//! localized at an explicit list of units: individual variables and/or
//! non-monomial unit polynomials such as `u + 1`. A `RatFunc` is a Laurent
//! polynomial in the invertible variables divided by declared unit powers;
//! equality is decidable by cross-multiplication and representations are
//! kept reduced.

use std::fmt;
use std::sync::Arc;

use super::poly::Poly;
use super::PrimeModulus;
use crate::error::{Error, Result};

/// A localized coordinate ring of an affine chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartRing {
    pub p: PrimeModulus,
    vars: Vec<String>,
    inverted: Vec<bool>,
    units: Vec<Poly>,
    unit_names: Vec<String>,
}

impl ChartRing {
    pub fn new(p: PrimeModulus, vars: &[&str]) -> Arc<Self> {
        Arc::new(ChartRing {
            p,
            vars: vars.iter().map(|s| s.to_string()).collect(),
            inverted: vec![false; vars.len()],
            units: Vec::new(),
            unit_names: Vec::new(),
        })
    }

    /// Chart with a subset of the variables inverted.
    pub fn localized(p: PrimeModulus, vars: &[&str], inverted: &[&str]) -> Arc<Self> {
        let inv = vars
            .iter()
            .map(|v| inverted.contains(v))
            .collect::<Vec<_>>();
        Arc::new(ChartRing {
            p,
            vars: vars.iter().map(|s| s.to_string()).collect(),
            inverted: inv,
            units: Vec::new(),
            unit_names: Vec::new(),
        })
    }

    /// Extend a chart by additional non-monomial units.
    pub fn with_units(self: &Arc<Self>, units: Vec<Poly>) -> Arc<Self> {
        let mut ring = (**self).clone();
        for u in units {
            assert_eq!(u.nvars, ring.vars.len());
            let name = u.display(&ring.vars);
            ring.units.push(u);
            ring.unit_names.push(name);
        }
        Arc::new(ring)
    }

    /// Extend a chart by inverting more of its variables.
    pub fn with_inverted(self: &Arc<Self>, extra: &[&str]) -> Arc<Self> {
        let mut ring = (**self).clone();
        for (i, v) in ring.vars.iter().enumerate() {
            if extra.contains(&v.as_str()) {
                ring.inverted[i] = true;
            }
        }
        Arc::new(ring)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn is_inverted(&self, var: usize) -> bool {
        self.inverted[var]
    }

    pub fn units(&self) -> &[Poly] {
        &self.units
    }

    pub fn unit_name(&self, i: usize) -> &str {
        &self.unit_names[i]
    }

    /// Index of a unit equal to the given polynomial, if declared.
    pub fn find_unit(&self, q: &Poly) -> Option<usize> {
        self.units.iter().position(|u| u == q)
    }

    pub fn compatible(&self, other: &ChartRing) -> bool {
        self == other
    }
}

/// A reduced localized rational function on a chart.
#[derive(Debug, Clone)]
pub struct RatFunc {
    ring: Arc<ChartRing>,
    num: Poly,
    /// One exponent per declared (non-monomial) chart unit.
    den: Vec<u32>,
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        assert!(
            self.ring.compatible(&other.ring),
            "comparing functions on different charts"
        );
        // Representations are reduced on construction, so cross-multiplying
        // is only needed when the denominators differ.
        if self.den == other.den {
            return self.num == other.num;
        }
        let lhs = other.den_poly().mul(&self.num);
        let rhs = self.den_poly().mul(&other.num);
        lhs == rhs
    }
}

impl Eq for RatFunc {}

impl RatFunc {
    pub fn from_poly(ring: &Arc<ChartRing>, num: Poly) -> Self {
        let den = vec![0; ring.units().len()];
        let f = RatFunc { ring: ring.clone(), num, den };
        f.assert_valid();
        f
    }

    pub fn new(ring: &Arc<ChartRing>, num: Poly, den: Vec<u32>) -> Self {
        assert_eq!(den.len(), ring.units().len());
        let mut f = RatFunc { ring: ring.clone(), num, den };
        f.reduce();
        f.assert_valid();
        f
    }

    pub fn zero(ring: &Arc<ChartRing>) -> Self {
        RatFunc::from_poly(ring, Poly::zero(ring.p, ring.nvars()))
    }

    pub fn one(ring: &Arc<ChartRing>) -> Self {
        RatFunc::constant(ring, 1)
    }

    pub fn constant(ring: &Arc<ChartRing>, c: i64) -> Self {
        RatFunc::from_poly(ring, Poly::constant(ring.p, ring.nvars(), c))
    }

    pub fn var(ring: &Arc<ChartRing>, name: &str) -> Result<Self> {
        let idx = ring
            .var_index(name)
            .ok_or_else(|| Error::Invalid(format!("unknown variable {name}")))?;
        Ok(RatFunc::from_poly(
            ring,
            Poly::var(ring.p, ring.nvars(), idx),
        ))
    }

    pub fn ring(&self) -> &Arc<ChartRing> {
        &self.ring
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den_exponents(&self) -> &[u32] {
        &self.den
    }

    pub fn den_poly(&self) -> Poly {
        let mut d = Poly::one(self.ring.p, self.ring.nvars());
        for (i, &e) in self.den.iter().enumerate() {
            if e > 0 {
                d = d.mul(&self.ring.units()[i].pow(e));
            }
        }
        d
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.iter().all(|&e| e == 0)
    }

    /// The constant value, when `is_constant`.
    pub fn constant_value(&self) -> Option<u64> {
        if self.is_constant() {
            Some(self.num.constant_term())
        } else {
            None
        }
    }

    fn assert_valid(&self) {
        for (m, _) in self.num.terms() {
            for (v, &e) in m.0.iter().enumerate() {
                assert!(
                    e >= 0 || self.ring.is_inverted(v),
                    "negative power of non-inverted variable {}",
                    self.ring.vars()[v]
                );
            }
        }
    }

    /// Cancel declared units out of the numerator where possible.
    fn reduce(&mut self) {
        if self.num.is_zero() {
            for e in &mut self.den {
                *e = 0;
            }
            return;
        }
        for i in 0..self.den.len() {
            while self.den[i] > 0 {
                match self.num.exact_div(&self.ring.units()[i]) {
                    Some(q) if self.quotient_ok(&q) => {
                        self.num = q;
                        self.den[i] -= 1;
                    }
                    _ => break,
                }
            }
        }
    }

    fn quotient_ok(&self, q: &Poly) -> bool {
        q.terms().all(|(m, _)| {
            m.0.iter()
                .enumerate()
                .all(|(v, &e)| e >= 0 || self.ring.is_inverted(v))
        })
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        self.check(other);
        let den: Vec<u32> = self
            .den
            .iter()
            .zip(&other.den)
            .map(|(&a, &b)| a.max(b))
            .collect();
        let mut lhs = self.num.clone();
        let mut rhs = other.num.clone();
        for (i, &e) in den.iter().enumerate() {
            if e > self.den[i] {
                lhs = lhs.mul(&self.ring.units()[i].pow(e - self.den[i]));
            }
            if e > other.den[i] {
                rhs = rhs.mul(&self.ring.units()[i].pow(e - other.den[i]));
            }
        }
        RatFunc::new(&self.ring, lhs.add(&rhs), den)
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            ring: self.ring.clone(),
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        self.check(other);
        let den: Vec<u32> = self
            .den
            .iter()
            .zip(&other.den)
            .map(|(&a, &b)| a + b)
            .collect();
        RatFunc::new(&self.ring, self.num.mul(&other.num), den)
    }

    pub fn scale(&self, c: i64) -> RatFunc {
        RatFunc {
            ring: self.ring.clone(),
            num: self.num.scale(self.ring.p.reduce_i64(c)),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        let mut acc = RatFunc::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Inverse, when `self` is a unit of the chart ring: a constant times a
    /// monomial in inverted variables times declared unit powers.
    pub fn try_inverse(&self) -> Result<RatFunc> {
        let p = self.ring.p;
        let mut num = self.num.clone();
        let mut unit_pows = vec![0u32; self.ring.units().len()];
        for (i, u) in self.ring.units().iter().enumerate() {
            loop {
                match num.exact_div(u) {
                    Some(q) if !q.is_zero() => {
                        num = q;
                        unit_pows[i] += 1;
                    }
                    _ => break,
                }
            }
        }
        if num.num_terms() != 1 {
            return Err(Error::NotAUnit(self.to_string()));
        }
        let (m, &c) = num.terms().next().unwrap();
        for (v, &e) in m.0.iter().enumerate() {
            if e != 0 && !self.ring.is_inverted(v) {
                return Err(Error::NotAUnit(self.to_string()));
            }
        }
        // self = c * mono * prod(units^unit_pows) / prod(units^den)
        // inverse = c^{-1} * mono^{-1} * prod(units^den) / prod(units^unit_pows)
        let inv_exps: Vec<i32> = m.0.iter().map(|&e| -e).collect();
        let mut inv_num = Poly::monomial(p, inv_exps, p.inv(c) as i64);
        for (i, &e) in self.den.iter().enumerate() {
            if e > 0 {
                inv_num = inv_num.mul(&self.ring.units()[i].pow(e));
            }
        }
        Ok(RatFunc::new(&self.ring, inv_num, unit_pows))
    }

    pub fn is_unit(&self) -> bool {
        self.try_inverse().is_ok()
    }

    /// Divide by a unit; fails when `other` is not a unit of the chart.
    pub fn div_unit(&self, other: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&other.try_inverse()?))
    }

    /// Plain first derivative in the named variable.
    pub fn deriv(&self, var: usize) -> RatFunc {
        // d(num/D) = (num' D - num D') / D^2 with D a product of unit powers;
        // expanding per unit keeps the denominator in declared units.
        let p = self.ring.p;
        let mut out = RatFunc {
            ring: self.ring.clone(),
            num: self.num.deriv(var),
            den: self.den.clone(),
        };
        out.reduce();
        for (i, &e) in self.den.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let u = &self.ring.units()[i];
            let du = u.deriv(var);
            if du.is_zero() {
                continue;
            }
            let mut den = self.den.clone();
            den[i] += 1;
            let coeff = p.neg(p.reduce_i64(e as i64));
            let term = RatFunc::new(&self.ring, self.num.mul(&du).scale(coeff), den);
            out = out.add(&term);
        }
        out
    }

    /// Divided-power derivative `∂^{[k]}` in `var`.
    ///
    /// Monomial numerators use the closed form; unit denominators are
    /// handled by the quotient-rule recursion on `unit^{-e}`.
    pub fn hasse(&self, var: usize, k: u32) -> RatFunc {
        if k == 0 {
            return self.clone();
        }
        if self.den.iter().all(|&e| e == 0) {
            return RatFunc::from_poly(&self.ring, self.num.hasse(var, k));
        }
        // Split off one unit power at a time via the divided Leibniz rule.
        let mut factors: Vec<(usize, u32)> = Vec::new();
        for (i, &e) in self.den.iter().enumerate() {
            if e > 0 {
                factors.push((i, e));
            }
        }
        let base = RatFunc::from_poly(&self.ring, self.num.clone());
        let mut parts: Vec<RatFunc> = vec![base];
        for &(i, e) in &factors {
            parts.push(RatFunc::new(
                &self.ring,
                Poly::one(self.ring.p, self.ring.nvars()),
                unit_vec(self.ring.units().len(), i, e),
            ));
        }
        hasse_product(&parts, var, k)
    }

    /// True when `d/d var` kills this function syntactically: all numerator
    /// exponents of `var` divisible by p and all denominator units horizontal.
    pub fn is_horizontal(&self, var: usize) -> bool {
        if !self.num.is_horizontal(var) {
            return false;
        }
        self.den
            .iter()
            .enumerate()
            .all(|(i, &e)| e == 0 || self.ring.units()[i].is_horizontal(var))
    }

    /// Substitute a value for one variable; the value lives on `target`.
    ///
    /// Negative powers of the substituted variable require `value` to be a
    /// unit; non-monomial denominators must stay inside declared units.
    pub fn substitute(
        &self,
        var: usize,
        value: &RatFunc,
        target: &Arc<ChartRing>,
        var_map: &[Option<usize>],
    ) -> Result<RatFunc> {
        assert!(value.ring().compatible(target));
        let p = self.ring.p;
        let value_inv = value.try_inverse();
        let mut out = RatFunc::zero(target);
        for (m, &c) in self.num.terms() {
            let mut term = RatFunc::constant(target, c as i64);
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let factor = if v == var {
                    if e >= 0 {
                        value.pow(e as u32)
                    } else {
                        match &value_inv {
                            Ok(inv) => inv.pow((-e) as u32),
                            Err(_) => {
                                return Err(Error::NotAUnit(format!(
                                    "substitution value {value} must be a unit"
                                )))
                            }
                        }
                    }
                } else {
                    let tv = var_map[v].ok_or_else(|| {
                        Error::ChartMismatch(format!(
                            "variable {} has no image in target chart",
                            self.ring.vars()[v]
                        ))
                    })?;
                    RatFunc::from_poly(target, Poly::var_pow(p, target.nvars(), tv, e))
                };
                term = term.mul(&factor);
            }
            out = out.add(&term);
        }
        // Denominator units must be substitutable too.
        for (i, &e) in self.den.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let unit = RatFunc::from_poly(
                &self.ring,
                self.ring.units()[i].clone(),
            );
            let sub = unit.substitute(var, value, target, var_map)?;
            let inv = sub.try_inverse().map_err(|_| {
                Error::NotAUnit(format!(
                    "substituted unit {sub} is not a unit of the target chart"
                ))
            })?;
            out = out.mul(&inv.pow(e));
        }
        Ok(out)
    }

    /// Canonical display: reduced numerator over a monomial-and-units
    /// denominator, coefficients in `0..p-1`, graded-lex term order.
    pub fn to_display(&self) -> String {
        let names = self.ring.vars();
        // Fold negative numerator exponents into the displayed denominator.
        let mut shift = vec![0i32; self.ring.nvars()];
        for v in 0..self.ring.nvars() {
            let m = self.num.min_exp(v);
            if m < 0 {
                shift[v] = -m;
            }
        }
        let mut num = self.num.clone();
        for (v, &s) in shift.iter().enumerate() {
            if s > 0 {
                num = num.shift_var(v, s);
            }
        }
        let num_str = num.display(names);
        let mut den_factors: Vec<String> = Vec::new();
        for (v, &s) in shift.iter().enumerate() {
            if s == 1 {
                den_factors.push(names[v].clone());
            } else if s > 1 {
                den_factors.push(format!("{}^{}", names[v], s));
            }
        }
        for (i, &e) in self.den.iter().enumerate() {
            if e == 1 {
                den_factors.push(format!("({})", self.ring.unit_name(i)));
            } else if e > 1 {
                den_factors.push(format!("({})^{}", self.ring.unit_name(i), e));
            }
        }
        if den_factors.is_empty() {
            num_str
        } else {
            let num_wrapped = if num.num_terms() > 1 {
                format!("({num_str})")
            } else {
                num_str
            };
            format!("{}/({})", num_wrapped, den_factors.join("*"))
        }
    }

    fn check(&self, other: &RatFunc) {
        assert!(
            self.ring.compatible(&other.ring),
            "operands live on different charts"
        );
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_display())
    }
}

fn unit_vec(len: usize, i: usize, e: u32) -> Vec<u32> {
    let mut v = vec![0; len];
    v[i] = e;
    v
}

/// `∂^{[k]}` of a product via the divided-power Leibniz rule.
fn hasse_product(parts: &[RatFunc], var: usize, k: u32) -> RatFunc {
    let ring = parts[0].ring().clone();
    if parts.len() == 1 {
        return hasse_single(&parts[0], var, k);
    }
    let (head, tail) = parts.split_first().unwrap();
    let mut acc = RatFunc::zero(&ring);
    for i in 0..=k {
        let left = hasse_single(head, var, i);
        if left.is_zero() {
            continue;
        }
        let right = hasse_product(tail, var, k - i);
        acc = acc.add(&left.mul(&right));
    }
    acc
}

fn hasse_single(f: &RatFunc, var: usize, k: u32) -> RatFunc {
    if k == 0 {
        return f.clone();
    }
    let ring = f.ring().clone();
    if f.den_exponents().iter().all(|&e| e == 0) {
        return RatFunc::from_poly(&ring, f.num().hasse(var, k));
    }
    // f = num * prod units^{-e}. Reduce to the pure unit-inverse case.
    let num_part = RatFunc::from_poly(&ring, f.num().clone());
    let mut acc = RatFunc::zero(&ring);
    for i in 0..=k {
        let left = hasse_single(&num_part, var, i);
        if left.is_zero() {
            continue;
        }
        let right = hasse_unit_inverses(&ring, f.den_exponents(), var, k - i);
        acc = acc.add(&left.mul(&right));
    }
    acc
}

/// `∂^{[j]}` of `prod_i unit_i^{-e_i}` by the recursion obtained from
/// differentiating `unit^{-e} * unit^{e} = 1`.
fn hasse_unit_inverses(ring: &Arc<ChartRing>, exps: &[u32], var: usize, j: u32) -> RatFunc {
    let first = exps.iter().position(|&e| e > 0);
    let Some(i) = first else {
        return if j == 0 {
            RatFunc::one(ring)
        } else {
            RatFunc::zero(ring)
        };
    };
    let mut rest = exps.to_vec();
    let e = rest[i];
    rest[i] = 0;
    if j == 0 {
        let mut den = vec![0; exps.len()];
        den[i] = e;
        let head = RatFunc::new(ring, Poly::one(ring.p, ring.nvars()), den);
        return head.mul(&hasse_unit_inverses(ring, &rest, var, 0));
    }
    let mut acc = RatFunc::zero(ring);
    for a in 0..=j {
        let left = hasse_unit_inverse_single(ring, i, e, var, a);
        if left.is_zero() {
            continue;
        }
        let right = hasse_unit_inverses(ring, &rest, var, j - a);
        acc = acc.add(&left.mul(&right));
    }
    acc
}

fn hasse_unit_inverse_single(
    ring: &Arc<ChartRing>,
    unit: usize,
    e: u32,
    var: usize,
    j: u32,
) -> RatFunc {
    if j == 0 {
        let mut den = vec![0; ring.units().len()];
        den[unit] = e;
        return RatFunc::new(ring, Poly::one(ring.p, ring.nvars()), den);
    }
    // X = unit^{-e}: sum_{a+b=j} D^{[a]}(X) D^{[b]}(unit^e) = 0
    let upow = ring.units()[unit].pow(e);
    let mut acc = RatFunc::zero(ring);
    for a in 0..j {
        let x_a = hasse_unit_inverse_single(ring, unit, e, var, a);
        let u_b = RatFunc::from_poly(ring, upow.hasse(var, j - a));
        acc = acc.add(&x_a.mul(&u_b));
    }
    let mut den = vec![0; ring.units().len()];
    den[unit] = e;
    let inv = RatFunc::new(ring, Poly::one(ring.p, ring.nvars()), den);
    acc.neg().mul(&inv)
}

/// Wronskian of functions of a single variable: the determinant of the
/// matrix with rows `(∂^j f_i)_i`, `0 <= j < |fs|`.
pub fn wronskian(fs: &[RatFunc], var: usize) -> RatFunc {
    assert!(!fs.is_empty());
    let ring = fs[0].ring().clone();
    let n = fs.len();
    let mut rows: Vec<Vec<RatFunc>> = Vec::with_capacity(n);
    rows.push(fs.to_vec());
    for j in 1..n {
        let prev = &rows[j - 1];
        rows.push(prev.iter().map(|f| f.deriv(var)).collect());
    }
    det(&ring, &rows)
}

fn det(ring: &Arc<ChartRing>, m: &[Vec<RatFunc>]) -> RatFunc {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = RatFunc::zero(ring);
    for col in 0..n {
        let mut minor = Vec::with_capacity(n - 1);
        for row in m.iter().skip(1) {
            let mut r = row.clone();
            r.remove(col);
            minor.push(r);
        }
        let term = m[0][col].mul(&det(ring, &minor));
        acc = if col % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p5() -> PrimeModulus {
        PrimeModulus::new(5).unwrap()
    }

    fn u_chart() -> Arc<ChartRing> {
        ChartRing::localized(p5(), &["u"], &["u"])
    }

    #[test]
    fn wronskian_examples() {
        let ring = u_chart();
        let one = RatFunc::one(&ring);
        let u = RatFunc::var(&ring, "u").unwrap();
        let u2 = u.mul(&u);
        assert_eq!(wronskian(&[one.clone(), u.clone()], 0), one);
        // hand oracle: det [[1,u,u^2],[0,1,2u],[0,0,2]] = 2
        assert_eq!(
            wronskian(&[one.clone(), u.clone(), u2], 0),
            RatFunc::constant(&ring, 2)
        );
        assert!(wronskian(&[u.clone(), u], 0).is_zero());
    }

    #[test]
    fn unit_denominator_arithmetic() {
        let p = p5();
        let base = ChartRing::localized(p, &["u"], &["u"]);
        let up1 = Poly::var(p, 1, 0).add(&Poly::one(p, 1));
        let ring = base.with_units(vec![up1.clone()]);
        let f = RatFunc::new(&ring, Poly::one(p, 1), vec![1]); // 1/(u+1)
        let g = f.mul(&RatFunc::from_poly(&ring, up1.clone())); // cancels
        assert_eq!(g, RatFunc::one(&ring));
        // derivative of 1/(u+1) is -1/(u+1)^2
        let df = f.deriv(0);
        let expect = RatFunc::new(&ring, Poly::constant(p, 1, -1), vec![2]);
        assert_eq!(df, expect);
        // hasse matches iterated derivative / k! for k = 2 < p
        let d2 = f.deriv(0).deriv(0); // 2/(u+1)^3
        let h2 = f.hasse(0, 2);
        let half = p.inv(2);
        assert_eq!(h2, d2.scale(half as i64));
    }

    #[test]
    fn inverse_detection() {
        let p = p5();
        let base = ChartRing::localized(p, &["u"], &["u"]);
        let up1 = Poly::var(p, 1, 0).add(&Poly::one(p, 1));
        let ring = base.with_units(vec![up1.clone()]);
        let u = RatFunc::var(&ring, "u").unwrap();
        let f = u.mul(&RatFunc::from_poly(&ring, up1)).scale(3);
        let inv = f.try_inverse().unwrap();
        assert_eq!(f.mul(&inv), RatFunc::one(&ring));
        let not_unit = u.add(&RatFunc::constant(&ring, 2));
        assert!(not_unit.try_inverse().is_err());
    }

    #[test]
    fn laurent_hasse_closed_form() {
        let ring = u_chart();
        let um1 = RatFunc::from_poly(&ring, Poly::var_pow(p5(), 1, 0, -1));
        // ∂^{[2]} u^{-1} = C(-1,2) u^{-3} = u^{-3}
        let h = um1.hasse(0, 2);
        assert_eq!(h, RatFunc::from_poly(&ring, Poly::var_pow(p5(), 1, 0, -3)));
    }
}
