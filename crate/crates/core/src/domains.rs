//! Classification of the `(A, B, C, alpha)` parameter space.
//!
//! Internally everything is expressed in `(A, B - alpha/2)`, where the
//! ground-state hyperbolas `A² - (B - α/2)² = ±K²` are axis-aligned and both
//! asymptotes are the diagonals.

use serde::Serialize;
use std::fmt;

use crate::error::{Result, ScarfError};
use crate::params::{f, ScarfParams, TOL_LINE};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum DomainClass {
    SusyUnbroken,
    SusyBrokenI,
    SusyBrokenII,
    SusyBrokenIII,
    PTBrokenLine,
    ExceptionalLine,
    IsospectralLine,
    SpectralSingularity(usize),
    NonPT,
}

impl fmt::Display for DomainClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainClass::SpectralSingularity(n) => write!(f, "SpectralSingularity({n})"),
            other => fmt::Debug::fmt(other, f),
        }
    }
}

/// A class plus whether the point sits exactly on `A = 0` or `B = α/2`,
/// where it is assigned to the closed unbroken side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub class: DomainClass,
    pub boundary: bool,
}

/// SUSY-breaking quadrant of a real-phase point.
pub fn classify_susy<T: Real>(p: &ScarfParams<T>) -> Result<Classification> {
    if !p.is_real_phase() {
        return Err(ScarfError::RequiresRealPhase { c: f(p.c) });
    }
    let (a, beta) = (p.a, p.shifted_b());
    let zero = T::zero();
    let class = match (a >= zero, beta >= zero) {
        (true, true) => DomainClass::SusyUnbroken,
        (false, true) => DomainClass::SusyBrokenI,
        (true, false) => DomainClass::SusyBrokenII,
        (false, false) => DomainClass::SusyBrokenIII,
    };
    Ok(Classification { class, boundary: a == zero || beta == zero })
}

/// PT classification. At `C = 0` the exceptional and isospectral lines take
/// precedence over the SUSY quadrants; at `C ≠ 0` only the PT line
/// `A = B - α/2` keeps the potential PT-symmetric.
pub fn classify_pt<T: Real>(p: &ScarfParams<T>) -> Classification {
    if p.is_real_phase() {
        let tol = T::lit(TOL_LINE);
        match on_asymptote(p, tol) {
            Asymptote::Exceptional | Asymptote::Both => {
                return Classification { class: DomainClass::ExceptionalLine, boundary: false }
            }
            Asymptote::Isospectral => return Classification { class: DomainClass::IsospectralLine, boundary: false },
            Asymptote::Neither => {}
        }
        return classify_susy(p).expect("real phase checked above");
    }
    let class = if p.is_on_pt_line() { DomainClass::PTBrokenLine } else { DomainClass::NonPT };
    Classification { class, boundary: false }
}

/// Full classification used for reporting: [`classify_pt`], refined to
/// `SpectralSingularity(n)` on the PT line when `A = nα`.
pub fn classify<T: Real>(p: &ScarfParams<T>) -> Classification {
    let c = classify_pt(p);
    if c.class == DomainClass::PTBrokenLine {
        if let Ok(ss) = spectral_singularity_orders(p, T::lit(TOL_LINE)) {
            if let Some(&n) = ss.orders.first() {
                return Classification { class: DomainClass::SpectralSingularity(n), boundary: false };
            }
        }
    }
    c
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum HyperbolaRegion {
    GroundStateBranchOne,
    GroundStateBranchTwo,
    Degenerate,
}

/// Which superpotential owns the lower ground state, and the hyperbola
/// constant `K² = |A² - (B - α/2)²|`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HyperbolaClass<T> {
    pub region: HyperbolaRegion,
    pub k2: T,
}

impl<T: Real> HyperbolaClass<T> {
    /// The lower of `-A²` and `-(B - α/2)²`.
    pub fn ground_energy(p: &ScarfParams<T>) -> T {
        let beta = p.shifted_b();
        (-(p.a * p.a)).min(-(beta * beta))
    }
}

pub fn ground_state_branch<T: Real>(p: &ScarfParams<T>) -> HyperbolaClass<T> {
    let tol = T::lit(TOL_LINE);
    let (ex, iso) = (p.exceptional_offset(), p.isospectral_offset());
    if ex.abs() <= tol || iso.abs() <= tol {
        return HyperbolaClass { region: HyperbolaRegion::Degenerate, k2: T::zero() };
    }
    // A² - β² = (A - β)(A + β)
    let signed = ex * iso;
    if signed > T::zero() {
        HyperbolaClass { region: HyperbolaRegion::GroundStateBranchOne, k2: signed }
    } else {
        HyperbolaClass { region: HyperbolaRegion::GroundStateBranchTwo, k2: -signed }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Asymptote {
    Exceptional,
    Isospectral,
    Both,
    Neither,
}

impl Asymptote {
    pub fn is_exceptional(self) -> bool {
        matches!(self, Asymptote::Exceptional | Asymptote::Both)
    }

    pub fn is_isospectral(self) -> bool {
        matches!(self, Asymptote::Isospectral | Asymptote::Both)
    }
}

/// Membership of the asymptotes `B = A + α/2` (exceptional points) and
/// `B = -A + α/2` (isospectral deformation).
pub fn on_asymptote<T: Real>(p: &ScarfParams<T>, tol: T) -> Asymptote {
    match (p.exceptional_offset().abs() <= tol, p.isospectral_offset().abs() <= tol) {
        (true, true) => Asymptote::Both,
        (true, false) => Asymptote::Exceptional,
        (false, true) => Asymptote::Isospectral,
        (false, false) => Asymptote::Neither,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralSingularities<T> {
    pub orders: Vec<usize>,
    /// `C²`, the real energy at which the complex pair coalesces.
    pub energy: T,
}

/// Orders `n ≥ 0` with `|A - nα| ≤ tol` on the PT line.
pub fn spectral_singularity_orders<T: Real>(p: &ScarfParams<T>, tol: T) -> Result<SpectralSingularities<T>> {
    if p.is_real_phase() || !p.is_on_pt_line() {
        return Err(ScarfError::NotOnPtLine { offset: f(p.exceptional_offset()) });
    }
    let ratio = p.a / p.alpha;
    let lo = (ratio - tol / p.alpha).ceil().max(T::zero());
    let hi = (ratio + tol / p.alpha).floor();
    let mut orders = Vec::new();
    let mut k = lo;
    while k <= hi {
        let n = k.to_usize().expect("non-negative order");
        if (p.a - T::of(n) * p.alpha).abs() <= tol {
            orders.push(n);
        }
        k = k + T::one();
    }
    Ok(SpectralSingularities { orders, energy: p.c * p.c })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PathEventKind {
    BranchSwitch,
    ExceptionalCrossing,
    IsospectralCrossing,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PathEvent<T> {
    /// Position along the polyline: segment index plus fraction of the
    /// segment.
    pub index: T,
    pub kind: PathEventKind,
    /// `(A, B)` of the crossing.
    pub location: (T, T),
}

const BISECTION_TOL: f64 = 1e-9;

/// Walks a polyline in the real-phase `(A, B)` plane and reports every
/// asymptote crossing, plus a `BranchSwitch` whenever the ground-state
/// region changes across it. Crossings are located by bisection on the
/// signed line functionals `A ∓ (B - α/2)`.
///
/// Zero values of a functional count as positive.
pub fn trace_path<T: Real>(points: &[(T, T)], alpha: T) -> Result<Vec<PathEvent<T>>> {
    if points.len() < 2 {
        return Err(ScarfError::InvalidInput("a path needs at least two points".into()));
    }
    if !(alpha > T::zero()) {
        return Err(ScarfError::InvalidParams(format!("alpha must be > 0, got {alpha}")));
    }
    let half = alpha / T::lit(2.0);
    let exceptional = |a: T, b: T| a - (b - half);
    let isospectral = |a: T, b: T| a + (b - half);
    let positive = |v: T| v >= T::zero();

    let mut events = Vec::new();
    for (seg, w) in points.windows(2).enumerate() {
        let ((a0, b0), (a1, b1)) = (w[0], w[1]);
        let at = |t: T| (a0 + (a1 - a0) * t, b0 + (b1 - b0) * t);
        let mut crossings: Vec<(T, PathEventKind)> = Vec::new();
        for (line, kind) in [
            (&exceptional as &dyn Fn(T, T) -> T, PathEventKind::ExceptionalCrossing),
            (&isospectral as &dyn Fn(T, T) -> T, PathEventKind::IsospectralCrossing),
        ] {
            let s0 = positive(line(a0, b0));
            if s0 == positive(line(a1, b1)) {
                continue;
            }
            let (mut lo, mut hi) = (T::zero(), T::one());
            while hi - lo > T::lit(BISECTION_TOL) * T::lit(0.5) {
                let mid = (lo + hi) * T::lit(0.5);
                let (a, b) = at(mid);
                if positive(line(a, b)) == s0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            crossings.push(((lo + hi) * T::lit(0.5), kind));
        }
        crossings.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap_or(std::cmp::Ordering::Equal));

        // region sign on either side of each crossing is the product of the
        // two functional signs
        let mut ex_sign = positive(exceptional(a0, b0));
        let mut iso_sign = positive(isospectral(a0, b0));
        for (t, kind) in crossings {
            let before = ex_sign == iso_sign;
            match kind {
                PathEventKind::ExceptionalCrossing => ex_sign = !ex_sign,
                _ => iso_sign = !iso_sign,
            }
            let location = at(t);
            let index = T::of(seg) + t;
            events.push(PathEvent { index, kind, location });
            if before != (ex_sign == iso_sign) {
                events.push(PathEvent { index, kind: PathEventKind::BranchSwitch, location });
            }
        }
    }
    Ok(events)
}

/// Marker points where the deformation function satisfies mKdV and the
/// associated potential satisfies KdV: `(α/2, 0)` and `(-α/2, α)`.
pub fn kdv_points<T: Real>(alpha: T) -> Result<[(T, T); 2]> {
    if !(alpha > T::zero()) {
        return Err(ScarfError::InvalidParams(format!("alpha must be > 0, got {alpha}")));
    }
    let half = alpha / T::lit(2.0);
    Ok([(half, T::zero()), (-half, alpha)])
}

/// Largest raster size per axis accepted by [`atlas`].
pub const ATLAS_MAX_RESOLUTION: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AtlasCell<T> {
    #[serde(rename = "A")]
    pub a: T,
    #[serde(rename = "B")]
    pub b: T,
    pub class: DomainClass,
    /// SUSY quadrant, reported even where `class` is a line.
    pub quadrant: DomainClass,
    pub region: HyperbolaRegion,
    pub k2: T,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Polyline<T> {
    pub asymptote: Asymptote,
    pub points: Vec<(T, T)>,
}

/// Real-phase `(A, B)` raster with both asymptotes and the KdV markers.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Atlas<T> {
    pub alpha: T,
    pub resolution: (usize, usize),
    /// Row-major: `A` varies fastest.
    pub cells: Vec<AtlasCell<T>>,
    pub asymptotes: Vec<Polyline<T>>,
    pub markers: Vec<(T, T)>,
}

fn axis<T: Real>(range: (T, T), n: usize, k: usize) -> T {
    if n == 1 {
        range.0
    } else if k + 1 == n {
        range.1
    } else {
        range.0 + (range.1 - range.0) * T::of(k) / T::of(n - 1)
    }
}

pub fn atlas<T: Real>(alpha: T, a_range: (T, T), b_range: (T, T), resolution: (usize, usize)) -> Result<Atlas<T>> {
    use rayon::prelude::*;
    let (na, nb) = resolution;
    if na == 0 || nb == 0 || na > ATLAS_MAX_RESOLUTION || nb > ATLAS_MAX_RESOLUTION {
        return Err(ScarfError::InvalidInput(format!(
            "resolution must be in 1..={ATLAS_MAX_RESOLUTION} per axis, got {na}x{nb}"
        )));
    }
    for (lo, hi) in [a_range, b_range] {
        if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(ScarfError::InvalidInput(format!("bad range [{lo}, {hi}]")));
        }
    }
    let markers = kdv_points(alpha)?.to_vec();
    let cells = (0..na * nb)
        .into_par_iter()
        .map(|idx| {
            let (a, b) = (axis(a_range, na, idx % na), axis(b_range, nb, idx / na));
            let p = ScarfParams::real(a, b, alpha)?;
            let hyper = ground_state_branch(&p);
            Ok(AtlasCell {
                a,
                b,
                class: classify(&p).class,
                quadrant: classify_susy(&p)?.class,
                region: hyper.region,
                k2: hyper.k2,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let half = alpha / T::lit(2.0);
    let line = |asymptote, s: T| Polyline {
        asymptote,
        points: (0..na).map(|k| axis(a_range, na, k)).map(|a| (a, s * a + half)).collect(),
    };
    Ok(Atlas {
        alpha,
        resolution,
        cells,
        asymptotes: vec![line(Asymptote::Exceptional, T::one()), line(Asymptote::Isospectral, -T::one())],
        markers,
    })
}
