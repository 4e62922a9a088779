//! Curve atlases, line-bundle cocycles, and theta characteristics at the
//! chart level, with the two-chart projective line built in.
//!
//! Conventions. For an ordered pair `(α, β)` the overlap data lives in
//! β-coordinates: `alpha_coord` is the α-coordinate written as a function
//! of the β-coordinate, and a cocycle entry `g_{αβ}` relates trivialized
//! section coefficients by `s_α = g_{αβ} · s_β` on the overlap. For the
//! projective line with charts `u` and `t = 1/u`, the tautological bundle
//! has `g_{UT} = t`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ffalg::{ChartRing, PrimeModulus, RatFunc};

/// Overlap of an ordered chart pair, expressed in the second chart's
/// coordinates.
#[derive(Debug, Clone)]
pub struct ChartOverlap {
    /// Localized ring of the overlap in β-coordinates.
    pub ring: Arc<ChartRing>,
    /// The α-coordinate as a function of the β-coordinate.
    pub alpha_coord: RatFunc,
}

/// An indexed chart collection with pairwise coordinate substitutions.
#[derive(Debug, Clone)]
pub struct CurveAtlas {
    pub p: PrimeModulus,
    charts: Vec<Arc<ChartRing>>,
    /// Coordinate variable index within each chart ring.
    coord: Vec<usize>,
    overlaps: BTreeMap<(usize, usize), ChartOverlap>,
}

impl CurveAtlas {
    pub fn new(
        p: PrimeModulus,
        charts: Vec<Arc<ChartRing>>,
        coord: Vec<usize>,
        overlaps: BTreeMap<(usize, usize), ChartOverlap>,
    ) -> Result<Arc<Self>> {
        assert_eq!(charts.len(), coord.len());
        let atlas = CurveAtlas { p, charts, coord, overlaps };
        atlas.check_consistency()?;
        Ok(Arc::new(atlas))
    }

    pub fn single_chart(ring: &Arc<ChartRing>, coord: usize) -> Arc<Self> {
        Arc::new(CurveAtlas {
            p: ring.p,
            charts: vec![ring.clone()],
            coord: vec![coord],
            overlaps: BTreeMap::new(),
        })
    }

    pub fn num_charts(&self) -> usize {
        self.charts.len()
    }

    pub fn chart(&self, i: usize) -> &Arc<ChartRing> {
        &self.charts[i]
    }

    pub fn coord_var(&self, i: usize) -> usize {
        self.coord[i]
    }

    pub fn overlap(&self, a: usize, b: usize) -> Option<&ChartOverlap> {
        self.overlaps.get(&(a, b))
    }

    pub fn ordered_overlaps(&self) -> impl Iterator<Item = (&(usize, usize), &ChartOverlap)> {
        self.overlaps.iter()
    }

    /// Move a chart function onto the overlap ring of `(a, b)`:
    /// functions on chart `a` are substituted, functions on chart `b`
    /// are extended along the localization.
    pub fn to_overlap(&self, from: usize, pair: (usize, usize), f: &RatFunc) -> Result<RatFunc> {
        let ov = self
            .overlaps
            .get(&pair)
            .ok_or_else(|| Error::ChartMismatch(format!("no overlap {pair:?}")))?;
        if from == pair.1 {
            extend_ratfunc(f, &ov.ring)
        } else if from == pair.0 {
            let var = self.coord[from];
            let var_map = identity_var_map(f, &ov.ring, var, self.coord[pair.1])?;
            f.substitute(var, &ov.alpha_coord, &ov.ring, &var_map)
        } else {
            Err(Error::ChartMismatch(format!(
                "chart {from} is not part of overlap {pair:?}"
            )))
        }
    }

    /// Index of the β-coordinate inside the overlap ring of `(a, b)`.
    pub fn overlap_coord(&self, pair: (usize, usize)) -> usize {
        let ov = &self.overlaps[&pair];
        let name = &self.charts[pair.1].vars()[self.coord[pair.1]];
        ov.ring
            .var_index(name)
            .expect("overlap ring carries the target coordinate")
    }

    /// Mutual-inverse and triple-overlap consistency of the substitutions.
    fn check_consistency(&self) -> Result<()> {
        for (&(a, b), ov) in &self.overlaps {
            let Some(rev) = self.overlaps.get(&(b, a)) else {
                return Err(Error::ChartMismatch(format!(
                    "overlap ({a},{b}) has no reverse"
                )));
            };
            // substitute u_b = rev.alpha_coord into ov.alpha_coord: recover u_a
            let vb = self.overlap_coord((a, b));
            let mut map = vec![None; ov.ring.nvars()];
            map[vb] = None;
            let roundtrip = ov
                .alpha_coord
                .substitute(vb, &rev.alpha_coord, &rev.ring, &map)?;
            let ua = RatFunc::var(&rev.ring, &self.charts[a].vars()[self.coord[a]])?;
            if roundtrip != ua {
                return Err(Error::ChartMismatch(format!(
                    "substitutions of overlap ({a},{b}) are not mutually inverse"
                )));
            }
        }
        // Triple overlaps: u_a expressed via b then c agrees with via c.
        for (&(a, b), _) in &self.overlaps {
            for c in 0..self.charts.len() {
                if c == a || c == b {
                    continue;
                }
                let (Some(ab), Some(bc), Some(ac)) = (
                    self.overlaps.get(&(a, b)),
                    self.overlaps.get(&(b, c)),
                    self.overlaps.get(&(a, c)),
                ) else {
                    continue;
                };
                let vb = self.overlap_coord((a, b));
                let mut map = vec![None; ab.ring.nvars()];
                map[vb] = None;
                let via_b = ab
                    .alpha_coord
                    .substitute(vb, &bc.alpha_coord, &bc.ring, &map);
                let Ok(via_b) = via_b else { continue };
                let direct = extend_ratfunc(&ac.alpha_coord, &bc.ring);
                if let Ok(direct) = direct {
                    if via_b != direct {
                        return Err(Error::ChartMismatch(format!(
                            "triple overlap ({a},{b},{c}) is inconsistent"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Map a chart function into a richer localization of the same coordinates.
pub fn extend_ratfunc(f: &RatFunc, target: &Arc<ChartRing>) -> Result<RatFunc> {
    if f.ring().as_ref() == target.as_ref() {
        return Ok(f.clone());
    }
    if f.ring().vars() != target.vars() {
        return Err(Error::ChartMismatch(format!(
            "cannot extend {:?} to {:?}",
            f.ring().vars(),
            target.vars()
        )));
    }
    let num = f.num().clone();
    let mut den = vec![0u32; target.units().len()];
    for (i, &e) in f.den_exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        let unit = &f.ring().units()[i];
        let j = target
            .find_unit(unit)
            .ok_or_else(|| Error::ChartMismatch("unit missing in target chart".into()))?;
        den[j] += e;
    }
    Ok(RatFunc::new(target, num, den))
}

fn identity_var_map(
    f: &RatFunc,
    target: &Arc<ChartRing>,
    subst_var: usize,
    target_var: usize,
) -> Result<Vec<Option<usize>>> {
    let mut map = vec![None; f.ring().nvars()];
    for (i, name) in f.ring().vars().iter().enumerate() {
        if i == subst_var {
            continue;
        }
        map[i] = target.var_index(name);
    }
    let _ = target_var;
    Ok(map)
}

/// Transition units of a line bundle, one per ordered overlap, each living
/// on the overlap ring (β-coordinates of the pair).
#[derive(Debug, Clone)]
pub struct LineBundleCocycle {
    atlas: Arc<CurveAtlas>,
    g: BTreeMap<(usize, usize), RatFunc>,
}

impl LineBundleCocycle {
    pub fn new(atlas: &Arc<CurveAtlas>, g: BTreeMap<(usize, usize), RatFunc>) -> Result<Self> {
        let cocycle = LineBundleCocycle { atlas: atlas.clone(), g };
        cocycle.check()?;
        Ok(cocycle)
    }

    pub fn trivial(atlas: &Arc<CurveAtlas>) -> Self {
        let mut g = BTreeMap::new();
        for (&pair, ov) in atlas.ordered_overlaps() {
            g.insert(pair, RatFunc::one(&ov.ring));
        }
        LineBundleCocycle { atlas: atlas.clone(), g }
    }

    pub fn atlas(&self) -> &Arc<CurveAtlas> {
        &self.atlas
    }

    pub fn transition(&self, a: usize, b: usize) -> Option<&RatFunc> {
        self.g.get(&(a, b))
    }

    /// `g_{αβ}^k` on the overlap ring; negative powers need the entry to be
    /// a unit, which the cocycle condition guarantees.
    pub fn transition_pow(&self, a: usize, b: usize, k: i32) -> Result<RatFunc> {
        let g = self
            .transition(a, b)
            .ok_or_else(|| Error::ChartMismatch(format!("no transition ({a},{b})")))?;
        if k >= 0 {
            Ok(g.pow(k as u32))
        } else {
            Ok(g.try_inverse()?.pow((-k) as u32))
        }
    }

    fn check(&self) -> Result<()> {
        for (&(a, b), g_ab) in &self.g {
            // g_{αβ} · g_{βα} = 1 after moving g_{βα} to the (α,β)-overlap.
            let g_ba = self
                .g
                .get(&(b, a))
                .ok_or_else(|| Error::ChartMismatch(format!("missing transition ({b},{a})")))?;
            let g_ba_here = self.atlas.to_overlap(a, (a, b), g_ba)?;
            if g_ab.mul(&g_ba_here) != RatFunc::one(&g_ab.ring().clone()) {
                return Err(Error::Verification(format!(
                    "cocycle inverse condition fails on overlap ({a},{b})"
                )));
            }
        }
        // Triple condition g_{αγ} = g_{αβ}·g_{βγ} where all three exist.
        let n = self.atlas.num_charts();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if a == b || b == c || a == c {
                        continue;
                    }
                    let (Some(_), Some(g_bc), Some(g_ac)) =
                        (self.g.get(&(a, b)), self.g.get(&(b, c)), self.g.get(&(a, c)))
                    else {
                        continue;
                    };
                    let g_ab_in_c = match self
                        .g
                        .get(&(a, b))
                        .map(|g| self.atlas.to_overlap(b, (b, c), g))
                    {
                        Some(Ok(v)) => v,
                        _ => continue,
                    };
                    if g_ab_in_c.mul(g_bc) != *g_ac {
                        return Err(Error::Verification(format!(
                            "cocycle condition fails on triple ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Derived cocycle of `L^{⊗m}`.
    pub fn power(&self, m: i32) -> Result<LineBundleCocycle> {
        let mut g = BTreeMap::new();
        for (&pair, _) in &self.g {
            g.insert(pair, self.transition_pow(pair.0, pair.1, m)?);
        }
        Ok(LineBundleCocycle { atlas: self.atlas.clone(), g })
    }
}

/// A line bundle cocycle together with per-chart units identifying
/// `L^{⊗2}` with the canonical bundle: `ψ(e_α^{⊗2}) = c_α · du_α`.
#[derive(Debug, Clone)]
pub struct ThetaCharacteristic {
    pub line: LineBundleCocycle,
    psi: Vec<RatFunc>,
}

impl ThetaCharacteristic {
    pub fn new(line: LineBundleCocycle, psi: Vec<RatFunc>) -> Result<Arc<Self>> {
        let atlas = line.atlas().clone();
        assert_eq!(psi.len(), atlas.num_charts());
        for (i, c) in psi.iter().enumerate() {
            if !c.is_unit() {
                return Err(Error::NotAUnit(format!("theta unit on chart {i}: {c}")));
            }
        }
        let theta = ThetaCharacteristic { line, psi };
        theta.check()?;
        Ok(Arc::new(theta))
    }

    pub fn atlas(&self) -> &Arc<CurveAtlas> {
        self.line.atlas()
    }

    pub fn unit(&self, chart: usize) -> &RatFunc {
        &self.psi[chart]
    }

    /// Chart-level content of `ψ_L : L^{⊗2} ≅ ω`:
    /// `c_α · g_{αβ}^2 = (du_β/du_α) · c_β` on every overlap.
    fn check(&self) -> Result<()> {
        let atlas = self.atlas().clone();
        for (&(a, b), ov) in atlas.ordered_overlaps() {
            let Some(g) = self.line.transition(a, b) else {
                continue;
            };
            let c_a = atlas.to_overlap(a, (a, b), &self.psi[a])?;
            let c_b = atlas.to_overlap(b, (a, b), &self.psi[b])?;
            // du_β/du_α = 1 / (d alpha_coord / du_β)
            let da = ov.alpha_coord.deriv(atlas.overlap_coord((a, b)));
            let jac = da.try_inverse().map_err(|_| {
                Error::ChartMismatch(format!("overlap ({a},{b}) is not étale"))
            })?;
            let lhs = c_a.mul(&g.mul(g));
            let rhs = jac.mul(&c_b);
            if lhs != rhs {
                return Err(Error::Verification(format!(
                    "theta units violate c_α·g² = (du_β/du_α)·c_β on overlap ({a},{b})"
                )));
            }
        }
        Ok(())
    }

    /// Trivial theta on a one-chart atlas: `ψ(e^{⊗2}) = c · du`.
    pub fn trivial(atlas: &Arc<CurveAtlas>, c: RatFunc) -> Result<Arc<Self>> {
        assert_eq!(atlas.num_charts(), 1);
        ThetaCharacteristic::new(LineBundleCocycle::trivial(atlas), vec![c])
    }
}

/// The built-in two-chart projective line: charts `u` and `t = 1/u`.
pub fn p1_atlas(p: PrimeModulus) -> Arc<CurveAtlas> {
    let u_chart = ChartRing::new(p, &["u"]);
    let t_chart = ChartRing::new(p, &["t"]);
    let u_loc = ChartRing::localized(p, &["u"], &["u"]);
    let t_loc = ChartRing::localized(p, &["t"], &["t"]);
    let inv_t = RatFunc::new(
        &t_loc,
        crate::ffalg::Poly::var_pow(p, 1, 0, -1),
        vec![],
    );
    let inv_u = RatFunc::new(
        &u_loc,
        crate::ffalg::Poly::var_pow(p, 1, 0, -1),
        vec![],
    );
    let mut overlaps = BTreeMap::new();
    overlaps.insert(
        (0usize, 1usize),
        ChartOverlap { ring: t_loc.clone(), alpha_coord: inv_t },
    );
    overlaps.insert(
        (1usize, 0usize),
        ChartOverlap { ring: u_loc.clone(), alpha_coord: inv_u },
    );
    CurveAtlas::new(p, vec![u_chart, t_chart], vec![0, 0], overlaps)
        .expect("built-in P1 atlas is consistent")
}

/// The canonical theta characteristic on the built-in projective line:
/// the tautological bundle with `g_{UT} = t`, `ψ` units `(1, -1)`.
pub fn p1_theta(atlas: &Arc<CurveAtlas>) -> Arc<ThetaCharacteristic> {
    assert_eq!(atlas.num_charts(), 2);
    let mut g = BTreeMap::new();
    let ov_ut = atlas.overlap(0, 1).unwrap();
    let ov_tu = atlas.overlap(1, 0).unwrap();
    g.insert((0usize, 1usize), RatFunc::var(&ov_ut.ring, "t").unwrap());
    g.insert((1usize, 0usize), RatFunc::var(&ov_tu.ring, "u").unwrap());
    let line = LineBundleCocycle::new(atlas, g).expect("tautological cocycle");
    ThetaCharacteristic::new(
        line,
        vec![
            RatFunc::one(atlas.chart(0)),
            RatFunc::constant(atlas.chart(1), -1),
        ],
    )
    .expect("canonical theta on P1")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p5() -> PrimeModulus {
        PrimeModulus::new(5).unwrap()
    }

    #[test]
    fn p1_atlas_is_consistent() {
        let atlas = p1_atlas(p5());
        assert_eq!(atlas.num_charts(), 2);
        let theta = p1_theta(&atlas);
        assert_eq!(theta.unit(0), &RatFunc::one(atlas.chart(0)));
    }

    #[test]
    fn p1_theta_units_are_forced() {
        // flipping the sign of the t-chart unit breaks the theta identity
        let atlas = p1_atlas(p5());
        let mut g = BTreeMap::new();
        g.insert((0usize, 1usize), RatFunc::var(&atlas.overlap(0, 1).unwrap().ring, "t").unwrap());
        g.insert((1usize, 0usize), RatFunc::var(&atlas.overlap(1, 0).unwrap().ring, "u").unwrap());
        let line = LineBundleCocycle::new(&atlas, g).unwrap();
        let bad = ThetaCharacteristic::new(
            line,
            vec![
                RatFunc::one(atlas.chart(0)),
                RatFunc::one(atlas.chart(1)),
            ],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn transport_across_p1_overlap() {
        let atlas = p1_atlas(p5());
        // u^2 + 1 in t-coordinates is t^{-2} + 1
        let f = crate::ffalg::parse_ratfunc("u^2 + 1", atlas.chart(0)).unwrap();
        let moved = atlas.to_overlap(0, (0, 1), &f).unwrap();
        let ov = atlas.overlap(0, 1).unwrap();
        let expect = crate::ffalg::parse_ratfunc("1/t^2 + 1", &ov.ring).unwrap();
        assert_eq!(moved, expect);
    }

    #[test]
    fn bad_cocycle_rejected() {
        let atlas = p1_atlas(p5());
        let mut g = BTreeMap::new();
        let two_t = RatFunc::var(&atlas.overlap(0, 1).unwrap().ring, "t")
            .unwrap()
            .scale(2);
        g.insert((0usize, 1usize), two_t);
        g.insert(
            (1usize, 0usize),
            RatFunc::var(&atlas.overlap(1, 0).unwrap().ring, "u").unwrap(),
        );
        assert!(LineBundleCocycle::new(&atlas, g).is_err());
    }
}
