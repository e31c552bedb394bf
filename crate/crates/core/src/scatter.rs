//! One-dimensional scattering off the complex potential: reflection and
//! transmission amplitudes, transmission scans, and detection of spectral
//! singularities (real-energy poles of `t`).

use num_complex::Complex;
use rayon::prelude::*;
use serde::Serialize;
use std::ops::Range;

use crate::error::{Result, ScarfError};
use crate::hyperbolic::SechTanhPoly;
use crate::params::{f, ScarfParams};
use crate::potential::PotentialKind;
use crate::scalar::Real;

/// Transmission above this is reported as this value with `singular` set.
pub const T_CAP: f64 = 1e12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScatterOptions<T> {
    /// Half-width of the integration window; `None` means `15/α + 5`.
    pub l: Option<T>,
    /// Largest `|V(±L)|` accepted.
    pub decay_tol: T,
    pub rtol: T,
    pub atol: T,
}

impl<T: Real> Default for ScatterOptions<T> {
    fn default() -> Self {
        Self { l: None, decay_tol: T::lit(1e-4), rtol: T::lit(1e-12), atol: T::lit(1e-14) }
    }
}

impl<T: Real> ScatterOptions<T> {
    pub fn window(&self, alpha: T) -> T {
        self.l.unwrap_or(T::lit(15.0) / alpha + T::lit(5.0))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScatteringResult<T> {
    #[serde(rename = "E")]
    pub e: T,
    pub k: T,
    /// Reflection amplitude for incidence from the left.
    pub r_left: Complex<T>,
    /// Reflection amplitude for incidence from the right.
    pub r_right: Complex<T>,
    /// Transmission amplitude for incidence from the left.
    pub t: Complex<T>,
    /// Transmission amplitude for incidence from the right.
    pub t_right: Complex<T>,
    /// `|r_left|²`.
    #[serde(rename = "R")]
    pub r: T,
    #[serde(rename = "R_right")]
    pub r_right_sq: T,
    /// `|t|²`, capped at [`T_CAP`].
    #[serde(rename = "T")]
    pub t_sq: T,
    /// The amplitude solve was (numerically) singular.
    pub singular: bool,
}

type State<T> = [Complex<T>; 2];

/// Dormand–Prince 5(4) with standard step-size control for
/// `ψ'' = (V - E) ψ`, from `x0` to `x1` (either direction).
fn integrate<T: Real>(
    v: &SechTanhPoly<T>,
    e: T,
    x0: T,
    x1: T,
    y0: State<T>,
    opts: &ScatterOptions<T>,
) -> Result<State<T>> {
    let rhs = |x: T, y: &State<T>| -> State<T> { [y[1], (v.eval(x) - e) * y[0]] };
    let lit = T::lit;
    let c = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
    let a: [&[f64]; 7] = [
        &[],
        &[1.0 / 5.0],
        &[3.0 / 40.0, 9.0 / 40.0],
        &[44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0],
        &[19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0],
        &[9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0],
        &[35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
    ];
    let b5 = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
    let b4 = [5179.0 / 57600.0, 0.0, 7571.0 / 16695.0, 393.0 / 640.0, -92097.0 / 339200.0, 187.0 / 2100.0, 1.0 / 40.0];

    let span = x1 - x0;
    let dir = span.signum();
    let mut x = x0;
    let mut y = y0;
    let mut h = dir * (span.abs() / lit(200.0)).min(lit(0.05));
    let h_min = lit(1e-10);
    let zero = Complex::new(T::zero(), T::zero());
    let mut k = [[zero; 2]; 7];
    k[0] = rhs(x, &y);
    while (x1 - x) * dir > T::zero() {
        if (x + h - x1) * dir > T::zero() {
            h = x1 - x;
        }
        for s in 1..7 {
            let mut ys = y;
            for (j, &aij) in a[s].iter().enumerate() {
                for comp in 0..2 {
                    ys[comp] = ys[comp] + k[j][comp] * (h * lit(aij));
                }
            }
            k[s] = rhs(x + h * lit(c[s]), &ys);
        }
        let mut y5 = y;
        let mut err = T::zero();
        for comp in 0..2 {
            let mut d5 = zero;
            let mut d4 = zero;
            for s in 0..7 {
                d5 = d5 + k[s][comp] * lit(b5[s]);
                d4 = d4 + k[s][comp] * lit(b4[s]);
            }
            y5[comp] = y[comp] + d5 * h;
            let scale = opts.atol + opts.rtol * y[comp].norm().max(y5[comp].norm());
            err = err.max(((d5 - d4) * h).norm() / scale);
        }
        if !err.is_finite() {
            return Err(ScarfError::StiffFailure { x: f(x), step: f(h.abs()) });
        }
        if err <= T::one() {
            x = x + h;
            y = y5;
            // first-same-as-last: stage 7 is the derivative at the new point
            k[0] = k[6];
        }
        let factor =
            if err == T::zero() { lit(5.0) } else { (lit(0.9) * err.powf(lit(-0.2))).min(lit(5.0)).max(lit(0.2)) };
        h = h * factor;
        if h.abs() < h_min && (x1 - x) * dir > h_min {
            return Err(ScarfError::StiffFailure { x: f(x), step: f(h.abs()) });
        }
    }
    Ok(y)
}

fn plane<T: Real>(k: T, x: T) -> Complex<T> {
    Complex::new(T::zero(), k * x).exp()
}

/// Transmission and reflection for incidence from the left: integrate the
/// outgoing wave `e^{ikx}` from `+L` back to `-L`, then split `ψ(-L)` into
/// `a e^{ikx} + b e^{-ikx}`; `t = 1/a`, `r = b/a`.
fn left_amplitudes<T: Real>(
    v: &SechTanhPoly<T>,
    e: T,
    l: T,
    opts: &ScatterOptions<T>,
) -> Result<(Complex<T>, Complex<T>)> {
    let k = e.sqrt();
    let ik = Complex::new(T::zero(), k);
    let start = [plane(k, l), ik * plane(k, l)];
    let y = integrate(v, e, l, -l, start, opts)?;
    let half = T::lit(0.5);
    let a = (y[0] + y[1] / ik) * half * plane(k, l);
    let b = (y[0] - y[1] / ik) * half * plane(k, -l);
    Ok((a, b))
}

/// Mirror image of [`left_amplitudes`]: `e^{-ikx}` from `-L` to `+L`,
/// `ψ(L) = c e^{-ikx} + d e^{ikx}`.
fn right_amplitudes<T: Real>(
    v: &SechTanhPoly<T>,
    e: T,
    l: T,
    opts: &ScatterOptions<T>,
) -> Result<(Complex<T>, Complex<T>)> {
    let k = e.sqrt();
    let ik = Complex::new(T::zero(), k);
    let start = [plane(k, l), -ik * plane(k, l)];
    let y = integrate(v, e, -l, l, start, opts)?;
    let half = T::lit(0.5);
    let c = (y[0] - y[1] / ik) * half * plane(k, l);
    let d = (y[0] + y[1] / ik) * half * plane(k, -l);
    Ok((c, d))
}

fn check_decay<T: Real>(v: &SechTanhPoly<T>, l: T, tol: T) -> Result<()> {
    for x in [-l, l] {
        let m = v.eval(x).norm();
        if m > tol {
            return Err(ScarfError::NonDecayedPotential { x: f(x), magnitude: f(m), tol: f(tol) });
        }
    }
    Ok(())
}

fn check_energy<T: Real>(e: T) -> Result<()> {
    if !(e > T::zero()) || !e.is_finite() {
        return Err(ScarfError::InvalidInput(format!("scattering energy must be > 0, got {e}")));
    }
    Ok(())
}

/// `1/a` and `|1/a|²`, capped.
fn invert<T: Real>(a: Complex<T>, num: Complex<T>) -> (Complex<T>, Complex<T>, T, T, bool) {
    let cap = T::lit(T_CAP);
    let t = Complex::new(T::one(), T::zero()) / a;
    let r = num / a;
    let (mut t_sq, mut r_sq) = (t.norm_sqr(), r.norm_sqr());
    let singular = !(t_sq <= cap) || !(r_sq.is_finite());
    if singular {
        t_sq = t_sq.min(cap);
        r_sq = r_sq.min(cap);
        if !t_sq.is_finite() {
            t_sq = cap;
        }
        if !r_sq.is_finite() {
            r_sq = cap;
        }
    }
    (t, r, t_sq, r_sq, singular)
}

fn scatter_poly<T: Real>(v: &SechTanhPoly<T>, e: T, l: T, opts: &ScatterOptions<T>) -> Result<ScatteringResult<T>> {
    check_energy(e)?;
    check_decay(v, l, opts.decay_tol)?;
    let (a, b) = left_amplitudes(v, e, l, opts)?;
    let (c, d) = right_amplitudes(v, e, l, opts)?;
    let (t, r_left, t_sq, r, sing_l) = invert(a, b);
    let (t_right, r_right, _, r_right_sq, sing_r) = invert(c, d);
    Ok(ScatteringResult {
        e,
        k: e.sqrt(),
        r_left,
        r_right,
        t,
        t_right,
        r,
        r_right_sq,
        t_sq,
        singular: sing_l || sing_r,
    })
}

/// Scattering amplitudes at energy `E > 0` for both directions of
/// incidence.
pub fn scatter<T: Real>(
    p: &ScarfParams<T>,
    kind: PotentialKind,
    e: T,
    opts: &ScatterOptions<T>,
) -> Result<ScatteringResult<T>> {
    let v = kind.poly(p)?;
    scatter_poly(&v, e, opts.window(p.alpha), opts)
}

/// Left-incidence `|t|²` only (half the work of [`scatter`]).
fn transmission_left<T: Real>(v: &SechTanhPoly<T>, e: T, l: T, opts: &ScatterOptions<T>) -> Result<(T, bool)> {
    let (a, b) = left_amplitudes(v, e, l, opts)?;
    let (_, _, t_sq, _, singular) = invert(a, b);
    Ok((t_sq, singular))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum ScanOutcome<T> {
    Ok(ScatteringResult<T>),
    Err { name: String, message: String },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanPoint<T> {
    pub index: usize,
    #[serde(rename = "E")]
    pub e: T,
    pub outcome: ScanOutcome<T>,
}

impl<T> ScanPoint<T> {
    pub fn result(&self) -> Option<&ScatteringResult<T>> {
        match &self.outcome {
            ScanOutcome::Ok(r) => Some(r),
            ScanOutcome::Err { .. } => None,
        }
    }
}

/// Energy of sample `index` of a uniform scan.
pub fn scan_energy<T: Real>(emin: T, emax: T, samples: usize, index: usize) -> T {
    if samples <= 1 {
        return emin;
    }
    if index + 1 == samples {
        return emax;
    }
    emin + (emax - emin) * T::of(index) / T::of(samples - 1)
}

fn check_scan<T: Real>(emin: T, emax: T, samples: usize) -> Result<()> {
    if samples == 0 || !(emin > T::zero()) || !(emax >= emin) || !emax.is_finite() {
        return Err(ScarfError::InvalidInput(format!(
            "scan needs 0 < Emin <= Emax and samples >= 1, got [{emin}, {emax}] with {samples}"
        )));
    }
    if samples > 1 && emax == emin {
        return Err(ScarfError::InvalidInput("Emin == Emax with more than one sample".into()));
    }
    Ok(())
}

/// Samples `indices` of a uniform `samples`-point scan over `[emin, emax]`.
/// Calling it on consecutive index ranges and concatenating reproduces the
/// full scan exactly, so interrupted scans can be resumed. Per-point
/// failures are recorded in the output, not raised.
pub fn transmission_scan_range<T: Real>(
    p: &ScarfParams<T>,
    kind: PotentialKind,
    emin: T,
    emax: T,
    samples: usize,
    indices: Range<usize>,
    opts: &ScatterOptions<T>,
) -> Result<Vec<ScanPoint<T>>> {
    check_scan(emin, emax, samples)?;
    if indices.end > samples {
        return Err(ScarfError::InvalidInput(format!("index range ends at {} > {samples}", indices.end)));
    }
    let v = kind.poly(p)?;
    let l = opts.window(p.alpha);
    Ok(indices
        .into_par_iter()
        .map(|index| {
            let e = scan_energy(emin, emax, samples, index);
            let outcome = match scatter_poly(&v, e, l, opts) {
                Ok(r) => ScanOutcome::Ok(r),
                Err(err) => ScanOutcome::Err { name: err.name().into(), message: err.to_string() },
            };
            ScanPoint { index, e, outcome }
        })
        .collect())
}

pub fn transmission_scan<T: Real>(
    p: &ScarfParams<T>,
    kind: PotentialKind,
    emin: T,
    emax: T,
    samples: usize,
    opts: &ScatterOptions<T>,
) -> Result<Vec<ScanPoint<T>>> {
    transmission_scan_range(p, kind, emin, emax, samples, 0..samples, opts)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProbePoint<T> {
    pub detuning: T,
    #[serde(rename = "A")]
    pub a: T,
    pub peak_energy: T,
    pub peak_t: T,
    pub singular: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProbeOptions<T> {
    pub scatter: ScatterOptions<T>,
    /// Energy window searched for the peak; `None` means
    /// `[0.6 C², 1.25 C²]`.
    pub window: Option<(T, T)>,
    /// Coarse samples across the window before refinement.
    pub samples: usize,
}

impl<T: Real> Default for ProbeOptions<T> {
    fn default() -> Self {
        Self { scatter: ScatterOptions::default(), window: None, samples: 241 }
    }
}

/// Peak transmission near `E = C²` as the point `A = nα - δ`,
/// `B = A + α/2` approaches the spectral singularity `A = nα`.
///
/// For each detuning the window is scanned on a uniform grid and the best
/// sample refined by golden-section search between its neighbours.
pub fn ss_divergence_probe<T: Real>(
    p_base: &ScarfParams<T>,
    n: usize,
    detunings: &[T],
    opts: &ProbeOptions<T>,
) -> Result<Vec<ProbePoint<T>>> {
    p_base.require_pt_line()?;
    let e_ss = p_base.c * p_base.c;
    let (lo, hi) = opts.window.unwrap_or((T::lit(0.6) * e_ss, T::lit(1.25) * e_ss));
    let samples = opts.samples.max(3);
    check_scan(lo, hi, samples)?;
    detunings
        .iter()
        .map(|&delta| {
            let a = T::of(n) * p_base.alpha - delta;
            let p = ScarfParams::on_pt_line(a, p_base.c, p_base.alpha)?;
            let kind = PotentialKind::natural(&p);
            let v = kind.poly(&p)?;
            let l = opts.scatter.window(p.alpha);
            check_decay(&v, l, opts.scatter.decay_tol)?;
            let coarse = (0..samples)
                .into_par_iter()
                .map(|j| {
                    let e = scan_energy(lo, hi, samples, j);
                    transmission_left(&v, e, l, &opts.scatter).map(|(t, s)| (e, t, s))
                })
                .collect::<Result<Vec<_>>>()?;
            let (best, _) =
                coarse
                    .iter()
                    .enumerate()
                    .fold((0, T::neg_infinity()), |(bi, bt), (i, &(_, t, _))| if t > bt { (i, t) } else { (bi, bt) });
            let (mut peak_energy, mut peak_t, mut singular) = coarse[best];
            if !singular {
                let (mut x0, mut x1) = (coarse[best.saturating_sub(1)].0, coarse[(best + 1).min(samples - 1)].0);
                let phi = T::lit(0.618_033_988_749_894_8);
                let eval = |e: T| transmission_left(&v, e, l, &opts.scatter);
                for _ in 0..40 {
                    let m1 = x1 - (x1 - x0) * phi;
                    let m2 = x0 + (x1 - x0) * phi;
                    let (t1, s1) = eval(m1)?;
                    let (t2, s2) = eval(m2)?;
                    for (e, t, s) in [(m1, t1, s1), (m2, t2, s2)] {
                        if t > peak_t {
                            peak_energy = e;
                            peak_t = t;
                            singular = s;
                        }
                    }
                    if singular {
                        break;
                    }
                    if t1 > t2 {
                        x1 = m2;
                    } else {
                        x0 = m1;
                    }
                }
            }
            Ok(ProbePoint { detuning: delta, a, peak_energy, peak_t, singular })
        })
        .collect()
}
