//! Clock model: per-device clock requirements, network-wide envelopes, and
//! concrete piecewise-linear relative-time functions for simulation.
//!
//! A relative-time function `d(t)` gives the reading of one clock when
//! another shows `t`. Two network-wide parameters bound its evolution in a
//! non-synchronized network:
//!
//! ```text
//! (t - s - eta) / rho  <=  d(t) - d(s)  <=  rho (t - s) + eta      (s <= t)
//! ```
//!
//! and a synchronized network additionally pins the time error:
//!
//! ```text
//! |d(t) - t| <= delta
//! ```
//!
//! `rho` is the clock-stability bound of the network (max over ordered
//! clock pairs of the product of per-clock stabilities), `eta` the
//! timing-jitter bound. Validation of a concrete function against an
//! envelope is exact: piecewise linearity makes the binding constraints
//! attain their extrema at breakpoint pairs.

use serde::{Deserialize, Serialize};

use crate::curves::TimeMap;
use crate::rat::{format_rat, parse_rat, rat_i, rat_pow10, rat_serde, rat_serde_opt, Rat};
use crate::{Error, Result};
use num_traits::{Signed, Zero};

/// Per-clock requirement bounds: frequency offset, wander coefficient,
/// optional synchronization-servo allowance, and peak-to-peak jitter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClockSpec {
    /// Frequency-offset bound (dimensionless), e.g. `1e-4` for TSN.
    #[serde(with = "rat_serde")]
    pub rho1: Rat,
    /// Wander bound coefficient (dimensionless).
    #[serde(with = "rat_serde")]
    pub rho2: Rat,
    /// Servo bound for synchronized clocks (dimensionless, default 0).
    #[serde(with = "rat_serde", default = "Rat::zero")]
    pub rho3: Rat,
    /// Peak-to-peak timing-jitter bound in seconds.
    #[serde(with = "rat_serde")]
    pub eta: Rat,
}

impl ClockSpec {
    pub fn new(rho1: Rat, rho2: Rat, rho3: Rat, eta: Rat) -> Result<Self> {
        for (name, v) in [("rho1", &rho1), ("rho2", &rho2), ("rho3", &rho3), ("eta", &eta)] {
            if v < &Rat::zero() {
                return Err(Error::InvalidParameter(format!("{name} must be >= 0")));
            }
        }
        Ok(ClockSpec { rho1, rho2, rho3, eta })
    }

    /// Stability of the clock: `1 + rho1 + rho2 + rho3`.
    pub fn stability(&self) -> Rat {
        rat_i(1) + &self.rho1 + &self.rho2 + &self.rho3
    }

    /// The TSN clock requirement: 100 ppm frequency offset, 2 ns jitter.
    pub fn tsn() -> Self {
        ClockSpec {
            rho1: rat_pow10(1, 4),
            rho2: Rat::zero(),
            rho3: Rat::zero(),
            eta: rat_pow10(2, 9),
        }
    }
}

/// Network-wide clock-deviation parameters. `delta` present iff the
/// network is synchronized.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClockEnvelope {
    #[serde(with = "rat_serde")]
    pub rho: Rat,
    #[serde(with = "rat_serde")]
    pub eta: Rat,
    #[serde(with = "rat_serde_opt", default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Rat>,
}

impl ClockEnvelope {
    pub fn new(rho: Rat, eta: Rat, delta: Option<Rat>) -> Result<Self> {
        if rho < rat_i(1) {
            return Err(Error::InvalidParameter(format!("rho must be >= 1, got {rho}")));
        }
        if eta < Rat::zero() {
            return Err(Error::InvalidParameter(format!("eta must be >= 0, got {eta}")));
        }
        if let Some(d) = &delta {
            if d <= &Rat::zero() {
                return Err(Error::InvalidParameter(format!(
                    "delta must be > 0 when synchronized, got {d}"
                )));
            }
        }
        Ok(ClockEnvelope { rho, eta, delta })
    }

    /// Ideal clocks: `rho = 1`, `eta = 0`, non-synchronized.
    pub fn ideal() -> Self {
        ClockEnvelope {
            rho: rat_i(1),
            eta: Rat::zero(),
            delta: None,
        }
    }

    pub fn is_synchronized(&self) -> bool {
        self.delta.is_some()
    }

    pub fn is_ideal(&self) -> bool {
        self.rho == rat_i(1) && self.eta.is_zero()
    }

    /// Named presets. The non-synchronized TSN values are the rounded
    /// network-wide bounds `rho = 1 + 2e-4`, `eta = 4 ns`; the tight and
    /// loose synchronization presets add `delta = 1 us` and `delta = 125 ms`.
    pub fn preset(name: &str) -> Result<Self> {
        let tsn = ClockEnvelope {
            rho: rat_i(1) + rat_pow10(2, 4),
            eta: rat_pow10(4, 9),
            delta: None,
        };
        match name {
            "tsn-nonsync" => Ok(tsn),
            "tsn-tight-sync" => Ok(ClockEnvelope {
                delta: Some(rat_pow10(1, 6)),
                ..tsn
            }),
            "ntp-loose-sync" => Ok(ClockEnvelope {
                delta: Some(rat_pow10(125, 3)),
                ..tsn
            }),
            "ideal" => Ok(ClockEnvelope::ideal()),
            other => Err(Error::InvalidParameter(format!(
                "unknown envelope preset {other:?} (expected tsn-nonsync, tsn-tight-sync, ntp-loose-sync or ideal)"
            ))),
        }
    }

    /// Upper bound on the relative elapsed time another clock can show for
    /// an elapsed time `tau`: `rho tau + eta`, capped at `tau + 2 delta`
    /// when synchronized.
    pub fn upper(&self, tau: &Rat) -> Rat {
        let base = &self.rho * tau + &self.eta;
        match &self.delta {
            Some(d) => base.min(tau + rat_i(2) * d),
            None => base,
        }
    }

    /// Lower bound on the relative elapsed time:
    /// `max((tau - eta)/rho, tau - 2 delta, 0)`.
    pub fn lower(&self, tau: &Rat) -> Rat {
        let mut lo = (tau - &self.eta) / &self.rho;
        if let Some(d) = &self.delta {
            lo = lo.max(tau - rat_i(2) * d);
        }
        lo.max(Rat::zero())
    }

    /// The upper bound as a time map (for curve composition).
    pub fn upper_map(&self) -> TimeMap {
        let base = (Rat::zero(), self.eta.clone(), self.rho.clone());
        match &self.delta {
            None => TimeMap::new(vec![base]).expect("valid map"),
            Some(d) => {
                let two_d = rat_i(2) * d;
                // min(rho t + eta, t + 2 delta); branches cross where
                // (rho - 1) t = 2 delta - eta.
                if self.rho == rat_i(1) {
                    let v0 = self.eta.clone().min(two_d);
                    return TimeMap::new(vec![(Rat::zero(), v0, rat_i(1))]).expect("valid map");
                }
                let cross = (&two_d - &self.eta) / (&self.rho - rat_i(1));
                if cross <= Rat::zero() {
                    TimeMap::new(vec![(Rat::zero(), two_d, rat_i(1))]).expect("valid map")
                } else {
                    let at_cross = &self.rho * &cross + &self.eta;
                    TimeMap::new(vec![
                        (Rat::zero(), self.eta.clone(), self.rho.clone()),
                        (cross, at_cross, rat_i(1)),
                    ])
                    .expect("valid map")
                }
            }
        }
    }

    /// The lower bound as a time map: `max((t - eta)/rho, t - 2 delta, 0)`.
    pub fn lower_map(&self) -> TimeMap {
        let inv_rho = rat_i(1) / &self.rho;
        let mut pieces: Vec<(Rat, Rat, Rat)> = vec![(Rat::zero(), Rat::zero(), Rat::zero())];
        match &self.delta {
            None => pieces.push((self.eta.clone(), Rat::zero(), inv_rho)),
            Some(d) => {
                let two_d = rat_i(2) * d;
                if self.rho == rat_i(1) {
                    // max(t - eta, t - 2 delta, 0).
                    pieces.push((self.eta.clone().min(two_d), Rat::zero(), rat_i(1)));
                } else if self.eta < two_d {
                    // Flat, then the (t - eta)/rho branch, then t - 2 delta
                    // overtakes where t (rho - 1) = 2 delta rho - eta.
                    let cross = (&two_d * &self.rho - &self.eta) / (&self.rho - rat_i(1));
                    pieces.push((self.eta.clone(), Rat::zero(), inv_rho.clone()));
                    pieces.push((cross.clone(), (&cross - &self.eta) * inv_rho, rat_i(1)));
                } else {
                    // Degenerate jitter regime: the slope-1/rho branch never
                    // surfaces; the bound is max(0, t - 2 delta).
                    pieces.push((two_d, Rat::zero(), rat_i(1)));
                }
            }
        }
        // A leading flat piece of zero width (eta = 0) collapses.
        if pieces.len() > 1 && pieces[1].0.is_zero() {
            pieces.remove(0);
        }
        TimeMap::new(pieces).expect("valid map")
    }
}

/// Derives the network-wide envelope from per-clock specs: the maxima of
/// `rho_i rho_g` and `eta_g rho_i + eta_i` over ordered pairs (pairs with
/// `i = g` included; they are dominated for stabilities >= 1).
pub fn derive_envelope(specs: &[ClockSpec], delta: Option<Rat>) -> Result<ClockEnvelope> {
    if specs.is_empty() {
        return Err(Error::InvalidParameter(
            "envelope derivation needs at least one clock spec".into(),
        ));
    }
    let mut rho: Option<Rat> = None;
    let mut eta: Option<Rat> = None;
    for i in specs {
        for g in specs {
            let r = i.stability() * g.stability();
            let e = &g.eta * i.stability() + &i.eta;
            if rho.as_ref().map(|x| r > *x).unwrap_or(true) {
                rho = Some(r);
            }
            if eta.as_ref().map(|x| e > *x).unwrap_or(true) {
                eta = Some(e);
            }
        }
    }
    ClockEnvelope::new(rho.expect("nonempty"), eta.expect("nonempty"), delta)
}

/// A concrete strictly increasing, continuous, piecewise-linear
/// relative-time function, extrapolated affinely beyond its anchors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClockFunction {
    /// Breakpoints `(t, d(t))`, strictly increasing in both coordinates.
    #[serde(with = "anchors_serde")]
    pub anchors: Vec<(Rat, Rat)>,
    /// Slope after the last anchor (also used before the first when there
    /// is a single anchor).
    #[serde(with = "rat_serde")]
    pub tail_slope: Rat,
}

mod anchors_serde {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        anchors: &[(Rat, Rat)],
        ser: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<(String, String)> = anchors
            .iter()
            .map(|(t, d)| (format_rat(t), format_rat(d)))
            .collect();
        serde::Serialize::serialize(&strs, ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        de: D,
    ) -> std::result::Result<Vec<(Rat, Rat)>, D::Error> {
        let strs = Vec::<(String, String)>::deserialize(de)?;
        strs.into_iter()
            .map(|(t, d)| {
                Ok((
                    parse_rat(&t).map_err(serde::de::Error::custom)?,
                    parse_rat(&d).map_err(serde::de::Error::custom)?,
                ))
            })
            .collect()
    }
}

impl ClockFunction {
    pub fn new(anchors: Vec<(Rat, Rat)>, tail_slope: Rat) -> Result<Self> {
        if anchors.is_empty() {
            return Err(Error::InvalidClock("clock function needs anchors".into()));
        }
        for w in anchors.windows(2) {
            if w[1].0 <= w[0].0 || w[1].1 <= w[0].1 {
                return Err(Error::InvalidClock(
                    "clock anchors must be strictly increasing in both coordinates".into(),
                ));
            }
        }
        if tail_slope <= Rat::zero() {
            return Err(Error::InvalidClock("clock tail slope must be positive".into()));
        }
        Ok(ClockFunction { anchors, tail_slope })
    }

    /// The identity clock `d(t) = t`.
    pub fn identity() -> Self {
        ClockFunction {
            anchors: vec![(Rat::zero(), Rat::zero())],
            tail_slope: rat_i(1),
        }
    }

    /// A single-rate clock `d(t) = slope * t`.
    pub fn linear(slope: Rat) -> Result<Self> {
        ClockFunction::new(vec![(Rat::zero(), Rat::zero())], slope)
    }

    fn slope_of_segment(&self, i: usize) -> Rat {
        if i + 1 < self.anchors.len() {
            let (t0, d0) = &self.anchors[i];
            let (t1, d1) = &self.anchors[i + 1];
            (d1 - d0) / (t1 - t0)
        } else {
            self.tail_slope.clone()
        }
    }

    fn head_slope(&self) -> Rat {
        self.slope_of_segment(0)
    }

    pub fn apply(&self, t: &Rat) -> Rat {
        let (t0, d0) = &self.anchors[0];
        if t <= t0 {
            return d0 + self.head_slope() * (t - t0);
        }
        let i = match self.anchors.binary_search_by(|(x, _)| x.cmp(t)) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        let (ti, di) = &self.anchors[i];
        di + self.slope_of_segment(i) * (t - ti)
    }

    /// The inverse relative-time function (swap coordinates).
    pub fn invert(&self) -> ClockFunction {
        let anchors = self.anchors.iter().map(|(t, d)| (d.clone(), t.clone())).collect();
        let tail = rat_i(1) / &self.tail_slope;
        ClockFunction::new(anchors, tail).expect("inverse of strictly increasing clock")
    }

    pub fn apply_inverse(&self, d: &Rat) -> Rat {
        self.invert().apply(d)
    }

    /// Composition `t -> self(other(t))`, exact on the piecewise-linear
    /// class (breakpoints of `other` plus preimages of `self`'s).
    pub fn compose(&self, other: &ClockFunction) -> ClockFunction {
        let other_inv = other.invert();
        let mut ts: Vec<Rat> = other.anchors.iter().map(|(t, _)| t.clone()).collect();
        for (t, _) in &self.anchors {
            ts.push(other_inv.apply(t));
        }
        ts.sort();
        ts.dedup();
        let anchors: Vec<(Rat, Rat)> = ts
            .iter()
            .map(|t| (t.clone(), self.apply(&other.apply(t))))
            .collect();
        let tail = &self.tail_slope * &other.tail_slope;
        ClockFunction::new(anchors, tail).expect("composition of strictly increasing clocks")
    }

    /// Breakpoints restricted to `[lo, hi]`, including the interval ends.
    fn breakpoints_in(&self, lo: &Rat, hi: &Rat) -> Vec<Rat> {
        let mut ts = vec![lo.clone(), hi.clone()];
        for (t, _) in &self.anchors {
            if t > lo && t < hi {
                ts.push(t.clone());
            }
        }
        ts.sort();
        ts.dedup();
        ts
    }
}

/// One violated constraint found by [`validate_envelope`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeViolation {
    pub constraint: String,
    #[serde(with = "rat_serde")]
    pub s: Rat,
    #[serde(with = "rat_serde")]
    pub t: Rat,
    #[serde(with = "rat_serde")]
    pub observed: Rat,
    #[serde(with = "rat_serde")]
    pub bound: Rat,
}

/// Result of checking a clock function against an envelope on a domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violation: Option<EnvelopeViolation>,
}

/// Checks the two-parameter constraint (and the synchronized time-error
/// constraint when `delta` is present) for all `s <= t` in `[lo, hi]`.
///
/// Exact: on the piecewise-linear class the extrema of
/// `d(t) - d(s) - rho (t - s)` and of `d(t) - t` over the domain are
/// attained at breakpoint pairs, so a breakpoint scan decides validity.
pub fn validate_envelope(
    d: &ClockFunction,
    env: &ClockEnvelope,
    lo: &Rat,
    hi: &Rat,
) -> Result<ValidationReport> {
    if lo > hi {
        return Err(Error::InvalidParameter("validation domain is empty".into()));
    }
    let pts = d.breakpoints_in(lo, hi);
    let report = |constraint: &str, s: &Rat, t: &Rat, observed: Rat, bound: Rat| ValidationReport {
        valid: false,
        violation: Some(EnvelopeViolation {
            constraint: constraint.to_string(),
            s: s.clone(),
            t: t.clone(),
            observed,
            bound,
        }),
    };
    for (i, s) in pts.iter().enumerate() {
        let ds = d.apply(s);
        for t in &pts[i..] {
            let dt = d.apply(t);
            let upper = &env.rho * (t - s) + &env.eta;
            let diff = &dt - &ds;
            if diff > upper {
                return Ok(report("upper", s, t, diff, upper));
            }
            let lower = (t - s - &env.eta) / &env.rho;
            if diff < lower {
                return Ok(report("lower", s, t, diff, lower));
            }
        }
        if let Some(delta) = &env.delta {
            let err = (&ds - s).abs();
            if &err > delta {
                return Ok(report("time-error", s, s, err, delta.clone()));
            }
        }
    }
    Ok(ValidationReport {
        valid: true,
        violation: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn tsn_network_envelope() {
        // All-TSN network: rho = (1 + 1e-4)^2, eta = 2ns (1 + 1e-4) + 2ns.
        let env = derive_envelope(&[ClockSpec::tsn(), ClockSpec::tsn()], None).unwrap();
        assert_eq!(env.rho, rat(10001, 10000) * rat(10001, 10000));
        assert_eq!(
            env.eta,
            rat_pow10(2, 9) * rat(10001, 10000) + rat_pow10(2, 9)
        );
        // First-order values from the rounded preset.
        let preset = ClockEnvelope::preset("tsn-nonsync").unwrap();
        assert_eq!(preset.rho, rat(10002, 10000));
        assert_eq!(preset.eta, rat(4, 1_000_000_000));
    }

    #[test]
    fn ideal_envelope() {
        let spec = ClockSpec::new(Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()).unwrap();
        let env = derive_envelope(&[spec], None).unwrap();
        assert_eq!(env.rho, rat_i(1));
        assert!(env.eta.is_zero());
    }

    #[test]
    fn mixed_specs_worst_pair() {
        // Brute force over pairs is what the derivation does; check the
        // worst pair wins.
        let a = ClockSpec::new(rat(1, 10000), Rat::zero(), Rat::zero(), rat_pow10(2, 9)).unwrap();
        let b = ClockSpec::new(rat(1, 1000), Rat::zero(), Rat::zero(), rat_pow10(5, 9)).unwrap();
        let env = derive_envelope(&[a.clone(), b.clone()], None).unwrap();
        assert_eq!(env.rho, b.stability() * b.stability());
        assert_eq!(env.eta, &b.eta * b.stability() + &b.eta);
    }

    #[test]
    fn envelope_empty_list() {
        assert!(derive_envelope(&[], None).is_err());
    }

    #[test]
    fn upper_lower_bounds() {
        let env = ClockEnvelope::preset("tsn-nonsync").unwrap();
        let tau = rat_pow10(1, 6); // 1 us
        assert_eq!(env.upper(&tau), rat(10002, 10000) * &tau + rat(4, 1_000_000_000));
        assert_eq!(env.lower(&Rat::zero()), Rat::zero());
        assert_eq!(env.upper(&Rat::zero()), rat(4, 1_000_000_000));

        // Synchronized: min over the two branches.
        let sync = ClockEnvelope::new(rat(10002, 10000), rat_pow10(4, 9), Some(rat_pow10(1, 6)))
            .unwrap();
        let one = rat_i(1);
        assert_eq!(sync.upper(&one), &one + rat_pow10(2, 6));
    }

    #[test]
    fn upper_lower_maps_match_closed_forms() {
        let mut envs: Vec<ClockEnvelope> = ["tsn-nonsync", "tsn-tight-sync", "ntp-loose-sync", "ideal"]
            .iter()
            .map(|p| ClockEnvelope::preset(p).unwrap())
            .collect();
        // Degenerate jitter regimes: eta between 2 delta and 2 delta rho,
        // and eta beyond 2 delta rho.
        envs.push(ClockEnvelope::new(rat(3, 2), rat_i(1), Some(rat(1, 4))).unwrap());
        envs.push(ClockEnvelope::new(rat(3, 2), rat_i(2), Some(rat(1, 2))).unwrap());
        envs.push(ClockEnvelope::new(rat_i(1), rat(1, 8), Some(rat(1, 4))).unwrap());
        for env in envs {
            let um = env.upper_map();
            let lm = env.lower_map();
            for i in 0..400 {
                let tau = rat(i * 7, 13);
                assert_eq!(um.apply(&tau), env.upper(&tau), "upper {env:?} at {tau}");
                assert_eq!(lm.apply(&tau), env.lower(&tau), "lower {env:?} at {tau}");
                assert!(env.upper(&tau) >= tau, "upper must dominate tau");
                assert!(env.lower(&tau) <= tau, "lower must stay below tau");
            }
        }
    }

    #[test]
    fn clock_apply_invert_compose() {
        let rho = rat(7, 6);
        let d = ClockFunction::linear(rat_i(1) / &rho).unwrap(); // t / rho
        let inv = d.invert();
        assert_eq!(inv.apply(&rat_i(6)), rat_i(7));
        let id = d.compose(&inv);
        for i in 0..10 {
            let t = rat(i, 3);
            assert_eq!(id.apply(&t), t);
        }
    }

    #[test]
    fn compose_evaluates_pointwise() {
        let a = ClockFunction::new(
            vec![(rat_i(0), rat_i(0)), (rat_i(2), rat_i(3)), (rat_i(5), rat_i(4))],
            rat_i(1),
        )
        .unwrap();
        let b = ClockFunction::new(vec![(rat_i(0), rat_i(1)), (rat_i(4), rat_i(6))], rat(1, 2))
            .unwrap();
        let c = a.compose(&b);
        for i in -4..40 {
            let t = rat(i, 3);
            assert_eq!(c.apply(&t), a.apply(&b.apply(&t)), "at t={t}");
        }
    }

    #[test]
    fn validate_slope_clock() {
        // d(t) = t / rho meets the non-synchronized constraints.
        let env = ClockEnvelope::new(rat(7, 6), Rat::zero(), None).unwrap();
        let d = ClockFunction::linear(rat(6, 7)).unwrap();
        let rep = validate_envelope(&d, &env, &rat_i(0), &rat_i(100)).unwrap();
        assert!(rep.valid);

        // d(t) = rho^2 t violates it.
        let fast = ClockFunction::linear(rat(49, 36)).unwrap();
        let rep = validate_envelope(&fast, &env, &rat_i(0), &rat_i(100)).unwrap();
        assert!(!rep.valid);
        assert_eq!(rep.violation.unwrap().constraint, "upper");
    }

    #[test]
    fn symmetry_inverse_also_valid() {
        // If d meets the stability conditions then so does its inverse.
        let env = ClockEnvelope::new(rat(3, 2), rat(1, 10), None).unwrap();
        let d = ClockFunction::new(
            vec![
                (rat_i(0), rat_i(0)),
                (rat_i(2), rat_i(3)),
                (rat_i(6), rat(16, 3)),
                (rat_i(9), rat(25, 3)),
            ],
            rat_i(1),
        )
        .unwrap();
        let rep = validate_envelope(&d, &env, &rat_i(0), &rat_i(12)).unwrap();
        assert!(rep.valid, "{:?}", rep.violation);
        let inv = d.invert();
        let lo = d.apply(&rat_i(0));
        let hi = d.apply(&rat_i(12));
        let rep = validate_envelope(&inv, &env, &lo, &hi).unwrap();
        assert!(rep.valid, "inverse must validate: {:?}", rep.violation);
    }

    #[test]
    fn jitter_slack_permits_short_steep_segments() {
        // A brief slope-2 excursion of size <= eta/rho passes with rho
        // covering only the sustained slopes.
        let env = ClockEnvelope::new(rat(11, 10), rat(1, 2), None).unwrap();
        let d = ClockFunction::new(
            vec![
                (rat_i(0), rat_i(0)),
                (rat_i(10), rat_i(10)),
                (rat(101, 10), rat(103, 10)), // +0.3 in 0.1: slope 3
            ],
            rat_i(1),
        )
        .unwrap();
        let rep = validate_envelope(&d, &env, &rat_i(0), &rat_i(50)).unwrap();
        assert!(rep.valid, "{:?}", rep.violation);
    }

    #[test]
    fn serde_roundtrip() {
        let d = ClockFunction::new(vec![(rat_i(0), rat(1, 3)), (rat_i(5), rat_i(6))], rat(9, 8))
            .unwrap();
        let json = serde_json::to_string(&d).unwrap();
        let back: ClockFunction = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d);

        let env = ClockEnvelope::preset("tsn-tight-sync").unwrap();
        let json = serde_json::to_string(&env).unwrap();
        let back: ClockEnvelope = serde_json::from_str(&json).unwrap();
        assert_eq!(back, env);
    }
}
