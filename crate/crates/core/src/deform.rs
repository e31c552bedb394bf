//! Isospectral deformation `W → W + v`: the Bernoulli equation for `v`,
//! Miura maps `u = v² ± v'`, and stationary KdV / mKdV residuals.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Result, ScarfError};
use crate::hyperbolic::{Jet, Profile, SechTanhPoly};
use crate::params::{f, Branch, ScarfParams, Sign};
use crate::potential::{partner_poly, potential_pt_poly, superpotential_poly};
use crate::scalar::{i, re, Real};

/// Threshold on the Bernoulli residual.
pub const BERNOULLI_TOL: f64 = 1e-10;
/// Largest variance of `u - V` accepted as "constant".
pub const MIURA_VARIANCE_TOL: f64 = 1e-18;
/// Largest residual, relative to `max|f'''|`, accepted by the wave checks.
pub const WAVE_REL_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeformationCheck<T> {
    pub max_residual: T,
    pub sampled_at: Vec<T>,
    pub passed: bool,
}

/// `d = B - α/2 - A`, the amplitude of the deformation; zero means `v ≡ 0`.
pub fn deformation_amplitude<T: Real>(p: &ScarfParams<T>) -> T {
    p.shifted_b() - p.a
}

/// `v = d tanh(αx) - i d sech(αx)`.
pub fn deformation_v_poly<T: Real>(p: &ScarfParams<T>) -> SechTanhPoly<T> {
    let d = deformation_amplitude(p);
    SechTanhPoly::linear(p.alpha, re(d), -i::<T>() * d)
}

pub fn deformation_v<T: Real>(p: &ScarfParams<T>, x: T) -> Complex<T> {
    deformation_v_poly(p).eval(x)
}

pub fn tilde_superpotential_poly<T: Real>(p: &ScarfParams<T>) -> Result<SechTanhPoly<T>> {
    Ok(superpotential_poly(p, Branch::One)? + deformation_v_poly(p))
}

/// `W̃ = W₁ + v`.
pub fn tilde_superpotential<T: Real>(p: &ScarfParams<T>, x: T) -> Result<Complex<T>> {
    Ok(tilde_superpotential_poly(p)?.eval(x))
}

/// `v' - 2 W₁ v - v²` as a polynomial; it vanishes identically exactly when
/// `W₁ + v` generates the same `V₋` as `W₁`.
pub fn bernoulli_poly<T: Real>(p: &ScarfParams<T>) -> Result<SechTanhPoly<T>> {
    let w = superpotential_poly(p, Branch::One)?;
    let v = deformation_v_poly(p);
    let two = SechTanhPoly::constant(p.alpha, re(T::lit(2.0)));
    Ok(v.derivative() - &(&two * &w) * &v - &v * &v)
}

fn max_abs<T: Real>(poly: &SechTanhPoly<T>, xs: &[T]) -> T {
    xs.iter().map(|&x| poly.eval(x).norm()).fold(T::zero(), |a, b| a.max(b))
}

pub fn bernoulli_residual<T: Real>(p: &ScarfParams<T>, xs: &[T]) -> Result<DeformationCheck<T>> {
    let max_residual = max_abs(&bernoulli_poly(p)?, xs);
    Ok(DeformationCheck { max_residual, sampled_at: xs.to_vec(), passed: max_residual < T::lit(BERNOULLI_TOL) })
}

/// `V₋` from `W̃` minus `V₋` from `W₁`, both unshifted (`W² - W'`).
pub fn tilde_invariance<T: Real>(p: &ScarfParams<T>, xs: &[T]) -> Result<DeformationCheck<T>> {
    let w = superpotential_poly(p, Branch::One)?;
    let wt = tilde_superpotential_poly(p)?;
    let vm = |w: &SechTanhPoly<T>| w * w - w.derivative();
    let diff = vm(&wt) - vm(&w);
    let max_residual = max_abs(&diff, xs);
    Ok(DeformationCheck { max_residual, sampled_at: xs.to_vec(), passed: max_residual < T::lit(BERNOULLI_TOL) })
}

/// `-(A(A+α) + B²) sech² + iB(2A+α) sech tanh` for complex `A`, `B`.
pub fn scarf_poly_complex<T: Real>(alpha: T, a: Complex<T>, b: Complex<T>) -> SechTanhPoly<T> {
    let two = T::lit(2.0);
    SechTanhPoly::monomial(alpha, 0, 2, -(a * (a + alpha) + b * b))
        + SechTanhPoly::monomial(alpha, 1, 1, i::<T>() * b * (a * two + alpha))
}

/// Which form of the Miura map is checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MiuraForm {
    /// `u = v² ± v'`.
    Standard,
    /// `u = -v² ± i v'`.
    Variant,
}

/// Potential compared against `u`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum MiuraCandidate<T> {
    /// The undeformed potential at `p`.
    Original,
    /// `W² + W'` of `p` for a branch, shifted to vanish at infinity.
    PartnerPlus(Branch),
    /// The Scarf potential at (possibly complex) mapped parameters.
    Mapped { a: Complex<T>, b: Complex<T> },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MiuraMatch<T> {
    pub form: MiuraForm,
    pub sign: Sign,
    pub candidate: MiuraCandidate<T>,
    /// Mean of `u - V`.
    pub offset: Complex<T>,
    /// Mean of `|u - V - offset|²`.
    pub variance: T,
    /// `max_residual` is `max|u - V - offset|`; passed iff the variance is
    /// below [`MIURA_VARIANCE_TOL`].
    pub check: DeformationCheck<T>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MiuraReport<T> {
    pub standard: MiuraMatch<T>,
    pub variant: MiuraMatch<T>,
}

/// `u` for the requested form and sign.
pub fn miura_poly<T: Real>(p: &ScarfParams<T>, form: MiuraForm, sign: Sign) -> SechTanhPoly<T> {
    let v = deformation_v_poly(p);
    let dv = v.derivative();
    let s = re(sign.factor::<T>());
    match form {
        MiuraForm::Standard => &v * &v + dv.scale(s),
        MiuraForm::Variant => (&v * &v).scale(re(-T::one())) + dv.scale(s * i::<T>()),
    }
}

fn candidates<T: Real>(p: &ScarfParams<T>, form: MiuraForm) -> Result<Vec<(MiuraCandidate<T>, SechTanhPoly<T>)>> {
    let d = deformation_amplitude(p);
    // u = w² ± w' with w = A' tanh + iB' sech
    let (a1, b1) = match form {
        MiuraForm::Standard => (re(d), re(-d)),
        MiuraForm::Variant => (i::<T>() * d, -i::<T>() * d),
    };
    let mut out = vec![
        (MiuraCandidate::Original, potential_pt_poly(p)),
        (MiuraCandidate::PartnerPlus(Branch::One), partner_poly(p, Branch::One, Sign::Plus)?),
        (MiuraCandidate::PartnerPlus(Branch::Two), partner_poly(p, Branch::Two, Sign::Plus)?),
    ];
    for (sa, sb) in [(1.0, 1.0), (-1.0, -1.0), (1.0, -1.0), (-1.0, 1.0)] {
        let (a, b) = (a1 * T::lit(sa), b1 * T::lit(sb));
        out.push((MiuraCandidate::Mapped { a, b }, scarf_poly_complex(p.alpha, a, b)));
    }
    Ok(out)
}

fn best_match<T: Real>(p: &ScarfParams<T>, form: MiuraForm, sign: Sign, xs: &[T]) -> Result<MiuraMatch<T>> {
    let u = miura_poly(p, form, sign);
    let n = T::of(xs.len().max(1));
    let mut best: Option<MiuraMatch<T>> = None;
    for (candidate, v) in candidates(p, form)? {
        let diffs: Vec<Complex<T>> = xs.iter().map(|&x| u.eval(x) - v.eval(x)).collect();
        let offset = diffs.iter().fold(Complex::new(T::zero(), T::zero()), |a, &b| a + b) / n;
        let variance = diffs.iter().map(|z| (z - offset).norm_sqr()).fold(T::zero(), |a, b| a + b) / n;
        let max_residual = diffs.iter().map(|z| (z - offset).norm()).fold(T::zero(), |a, b| a.max(b));
        if best.as_ref().is_none_or(|b| variance < b.variance) {
            best = Some(MiuraMatch {
                form,
                sign,
                candidate,
                offset,
                variance,
                check: DeformationCheck {
                    max_residual,
                    sampled_at: xs.to_vec(),
                    passed: variance < T::lit(MIURA_VARIANCE_TOL),
                },
            });
        }
    }
    best.ok_or_else(|| ScarfError::InvalidInput("no sample points".into()))
}

/// Identifies `u = v² ± v'` (and `-v² ± i v'`) with a Scarf potential up to
/// an additive constant. The candidate with the smallest variance of
/// `u - V` is reported.
pub fn miura_check<T: Real>(p: &ScarfParams<T>, sign: Sign, xs: &[T]) -> Result<MiuraReport<T>> {
    if p.isospectral_offset().abs() > T::lit(crate::params::TOL_LINE) {
        return Err(ScarfError::NotOnIsospectralLine { offset: f(p.isospectral_offset()) });
    }
    if xs.is_empty() {
        return Err(ScarfError::InvalidInput("no sample points".into()));
    }
    Ok(MiuraReport {
        standard: best_match(p, MiuraForm::Standard, sign, xs)?,
        variant: best_match(p, MiuraForm::Variant, sign, xs)?,
    })
}

/// Sign of the nonlinear term: `-c f' ± 6 (…) f' + f''' = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Convention {
    Plus6,
    Minus6,
}

impl Convention {
    pub const BOTH: [Convention; 2] = [Convention::Plus6, Convention::Minus6];

    fn factor<T: Real>(self) -> T {
        match self {
            Convention::Plus6 => T::lit(6.0),
            Convention::Minus6 => T::lit(-6.0),
        }
    }
}

impl std::fmt::Display for Convention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Convention::Plus6 => "+6",
            Convention::Minus6 => "-6",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Speed<T> {
    Fixed(T),
    /// Least-squares fit over the sample points.
    Fit,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WaveCheck<T> {
    pub convention: Convention,
    /// Wave speed used; complex when fitted to a complex profile.
    pub c: Complex<T>,
    /// `max|f'''|` over the samples.
    pub scale: T,
    /// `max_residual / scale`.
    pub relative: T,
    /// `f' ≡ 0` on the samples, so any `c` works.
    pub degenerate: bool,
    /// `passed` compares `relative` with [`WAVE_REL_TOL`].
    pub check: DeformationCheck<T>,
}

/// `-c f' + q` with `q` the rest of the equation, `c` fixed or fitted.
fn wave_residual<T: Real>(
    jets: &[Jet<T>],
    q: &[Complex<T>],
    xs: &[T],
    convention: Convention,
    speed: Speed<T>,
) -> WaveCheck<T> {
    let zero = Complex::new(T::zero(), T::zero());
    let norm_d1 = jets.iter().map(|j| j.d1.norm_sqr()).fold(T::zero(), |a, b| a + b);
    let scale_f = jets.iter().map(|j| j.value.norm()).fold(T::one(), |a, b| a.max(b));
    let degenerate = norm_d1.sqrt() <= T::lit(1e-14) * scale_f;
    let c = match speed {
        Speed::Fixed(c) => re(c),
        Speed::Fit if degenerate => zero,
        Speed::Fit => jets.iter().zip(q).fold(zero, |acc, (j, &qj)| acc + j.d1.conj() * qj) / norm_d1,
    };
    let max_residual = jets.iter().zip(q).map(|(j, &qj)| (qj - c * j.d1).norm()).fold(T::zero(), |a, b| a.max(b));
    let scale = jets.iter().map(|j| j.d3.norm()).fold(T::zero(), |a, b| a.max(b));
    let relative = if max_residual == T::zero() {
        T::zero()
    } else if scale == T::zero() {
        T::infinity()
    } else {
        max_residual / scale
    };
    WaveCheck {
        convention,
        c,
        scale,
        relative,
        degenerate,
        check: DeformationCheck { max_residual, sampled_at: xs.to_vec(), passed: relative <= T::lit(WAVE_REL_TOL) },
    }
}

/// Residual of the travelling-wave KdV reduction `-c u' ± 6 u u' + u'''`.
pub fn stationary_kdv_residual<T: Real, P: Profile<T> + ?Sized>(
    u: &P,
    convention: Convention,
    speed: Speed<T>,
    xs: &[T],
) -> WaveCheck<T> {
    let k = convention.factor::<T>();
    let jets: Vec<_> = xs.iter().map(|&x| u.jet(x)).collect();
    let q: Vec<_> = jets.iter().map(|j| j.value * j.d1 * k + j.d3).collect();
    wave_residual(&jets, &q, xs, convention, speed)
}

/// Residual of the travelling-wave mKdV reduction `-c v' ± 6 v² v' + v'''`.
pub fn stationary_mkdv_residual<T: Real, P: Profile<T> + ?Sized>(
    v: &P,
    convention: Convention,
    speed: Speed<T>,
    xs: &[T],
) -> WaveCheck<T> {
    let k = convention.factor::<T>();
    let jets: Vec<_> = xs.iter().map(|&x| v.jet(x)).collect();
    let q: Vec<_> = jets.iter().map(|j| j.value * j.value * j.d1 * k + j.d3).collect();
    wave_residual(&jets, &q, xs, convention, speed)
}

/// KdV checks on `u₁ = v² + v'`, `u₂ = v² - v'`, their sum `2v²` and
/// difference `2v'`, all with fitted speed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairContrast<T> {
    pub u_plus: WaveCheck<T>,
    pub u_minus: WaveCheck<T>,
    pub sum: WaveCheck<T>,
    pub difference: WaveCheck<T>,
    /// `difference.relative / sum.relative`.
    pub ratio: T,
    /// Sum passes, difference fails, ratio at least `1e3`.
    pub holds: bool,
}

pub fn pair_contrast<T: Real>(p: &ScarfParams<T>, convention: Convention, xs: &[T]) -> PairContrast<T> {
    let v = deformation_v_poly(p);
    let two = SechTanhPoly::constant(p.alpha, re(T::lit(2.0)));
    let run = |u: SechTanhPoly<T>| stationary_kdv_residual(&u.differentiated(), convention, Speed::Fit, xs);
    let u_plus = run(miura_poly(p, MiuraForm::Standard, Sign::Plus));
    let u_minus = run(miura_poly(p, MiuraForm::Standard, Sign::Minus));
    let sum = run(&two * &(&v * &v));
    let difference = run(&two * &v.derivative());
    let ratio = if sum.relative == T::zero() {
        if difference.relative == T::zero() {
            T::one()
        } else {
            T::infinity()
        }
    } else {
        difference.relative / sum.relative
    };
    let holds = sum.check.passed && !difference.check.passed && ratio >= T::lit(1e3);
    PairContrast { u_plus, u_minus, sum, difference, ratio, holds }
}
