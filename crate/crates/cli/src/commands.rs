use rayon::prelude::*;
use serde_json::{json, Map, Value};

use scarf_core::deform::{
    bernoulli_residual, deformation_amplitude, deformation_v_poly, miura_check, miura_poly, pair_contrast,
    stationary_kdv_residual, stationary_mkdv_residual, tilde_invariance, Convention, MiuraCandidate, MiuraForm,
    MiuraMatch, Speed, WaveCheck, BERNOULLI_TOL, MIURA_VARIANCE_TOL, WAVE_REL_TOL,
};
use scarf_core::domains::{atlas, classify, classify_susy, ground_state_branch, on_asymptote, Asymptote};
use scarf_core::field::uniform_grid;
use scarf_core::optics::{energy_from_incidence, index_profile, permittivity};
use scarf_core::oracle::{match_energies, richardson_pair};
use scarf_core::scatter::{scatter, transmission_scan_range, ScanOutcome, ScatterOptions, ScatteringResult};
use scarf_core::spectra::{
    eigenfunction_energy, eigenvalues_complex, eigenvalues_real, sample_eigenfunction, susy_ladder_check,
    LadderOptions, NMax, Normalize, SpectrumResult,
};
use scarf_core::{Branch, Grid, Optics, Params, PotentialKind, ScarfError, Sign, C64, TOL_LINE};

use crate::args::{
    BranchArg, Command, GridArgs, KindArg, LadderBranch, NMaxArg, NormalizeArg, OutputArgs, ParamArgs, SignArg, Suite,
    SweepParam,
};
use crate::output::{complex, Table};
use crate::row;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numeric(ScarfError),
}

impl From<ScarfError> for CliError {
    fn from(e: ScarfError) -> Self {
        CliError::Numeric(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Everything a command produces; the envelope is added by the caller.
pub struct Output {
    pub result: Value,
    pub warnings: Vec<String>,
    pub table: Table,
    /// Plain-text rendering used when no `--format` is given.
    pub text: Option<String>,
    /// Names of failed mandatory checks.
    pub failed: Vec<String>,
}

impl Output {
    fn new(result: Value, table: Table) -> Self {
        Self { result, warnings: Vec::new(), table, text: None, failed: Vec::new() }
    }
}

/// Command name, raw parameters for the envelope, output flags and the body.
pub struct Invocation<'a> {
    pub name: &'static str,
    pub params: Value,
    pub output: &'a OutputArgs,
}

pub fn invocation(cmd: &Command) -> Invocation<'_> {
    let (name, params, output) = match cmd {
        Command::Classify { params, output } => ("classify", Some(params), output),
        Command::Spectrum { params, output, .. } => ("spectrum", Some(params), output),
        Command::Wavefunction { params, output, .. } => ("wavefunction", Some(params), output),
        Command::Potential { params, output, .. } => ("potential", Some(params), output),
        Command::Index { params, output, .. } => ("index", Some(params), output),
        Command::Scatter { params, output, .. } => ("scatter", Some(params), output),
        Command::Sweep { params, output, .. } => ("sweep", Some(params), output),
        Command::Verify { params, output, .. } => ("verify", Some(params), output),
        Command::Atlas { output, .. } => ("atlas", None, output),
    };
    let params = match (params, cmd) {
        (Some(p), _) => json!({ "A": p.a, "B": p.b, "C": p.c, "alpha": p.alpha }),
        (None, Command::Atlas { alpha, .. }) => json!({ "A": null, "B": null, "C": null, "alpha": alpha }),
        (None, _) => unreachable!("only atlas has no parameter flags"),
    };
    Invocation { name, params, output }
}

pub fn run(cmd: &Command) -> CliResult<Output> {
    match cmd {
        Command::Classify { params, .. } => run_classify(&require(params)?),
        Command::Spectrum { params, branch, n_max, .. } => run_spectrum(&require(params)?, *branch, *n_max),
        Command::Wavefunction { params, n, sign, grid, normalize, .. } => {
            run_wavefunction(&require(params)?, *n, *sign, grid, *normalize)
        }
        Command::Potential { params, kind, sign, branch, grid, .. } => {
            let p = require(params)?;
            run_potential(&p, potential_kind(&p, *kind, *sign, *branch), grid)
        }
        Command::Index { params, k0, epsb, theta, grid, .. } => {
            run_index(&require(params)?, Optics::new(*k0, *epsb, *theta)?, grid)
        }
        Command::Scatter { params, e, emin, emax, samples, from, to, l, decay_tol, kind, .. } => {
            let p = require(params)?;
            let opts = ScatterOptions { l: *l, decay_tol: *decay_tol, ..Default::default() };
            let kind = potential_kind(&p, *kind, SignArg::Plus, LadderBranch::One);
            match (e, emin, emax) {
                (Some(e), _, _) => run_scatter_one(&p, kind, *e, &opts),
                (None, Some(lo), Some(hi)) => {
                    run_scatter_scan(&p, kind, (*lo, *hi), *samples, *from, to.unwrap_or(*samples), &opts)
                }
                _ => Err(CliError::Usage("scatter needs either --E or both --Emin and --Emax".into())),
            }
        }
        Command::Sweep { params, param, start, stop, steps, pt_line, .. } => {
            run_sweep(params, *param, (*start, *stop), *steps, *pt_line)
        }
        Command::Verify { suite, params, branch, k, sign, l, n, points, tol, .. } => {
            let p = require(params)?;
            let opts = VerifyOptions {
                branch: ladder_branch(*branch),
                k: *k,
                sign: *sign,
                l: *l,
                n: *n,
                points: *points,
                tol: *tol,
            };
            run_verify(&p, *suite, &opts)
        }
        Command::Atlas { alpha, amin, amax, bmin, bmax, resolution, .. } => {
            run_atlas(*alpha, (*amin, *amax), (*bmin, *bmax), *resolution)
        }
    }
}

fn missing(flag: &str) -> CliError {
    CliError::Usage(format!("the following required argument was not provided: {flag} <VALUE>"))
}

fn require(p: &ParamArgs) -> CliResult<Params> {
    let a = p.a.ok_or_else(|| missing("--A"))?;
    let b = p.b.ok_or_else(|| missing("--B"))?;
    Ok(Params::new(a, b, p.c, p.alpha)?)
}

fn sign_of(s: SignArg) -> Sign {
    match s {
        SignArg::Plus => Sign::Plus,
        SignArg::Minus => Sign::Minus,
    }
}

fn ladder_branch(b: LadderBranch) -> Branch {
    match b {
        LadderBranch::One => Branch::One,
        LadderBranch::Two => Branch::Two,
    }
}

fn potential_kind(p: &Params, kind: KindArg, sign: SignArg, branch: LadderBranch) -> PotentialKind {
    let branch = ladder_branch(branch);
    match kind {
        KindArg::Auto => PotentialKind::natural(p),
        KindArg::Pt => PotentialKind::Pt,
        KindArg::General => PotentialKind::General(sign_of(sign)),
        KindArg::PartnerMinus => PotentialKind::Partner { branch, sign: Sign::Minus },
        KindArg::PartnerPlus => PotentialKind::Partner { branch, sign: Sign::Plus },
        KindArg::Free => PotentialKind::Free,
    }
}

fn kind_label(kind: PotentialKind) -> String {
    match kind {
        PotentialKind::Pt => "Pt".into(),
        PotentialKind::General(s) => format!("General({s})"),
        PotentialKind::Partner { branch, sign } => format!("Partner({branch},{s})", s = sign),
        PotentialKind::Free => "Free".into(),
    }
}

fn grid_xs(alpha: f64, g: &GridArgs) -> (f64, f64, usize) {
    (g.xmin.unwrap_or(-12.0 / alpha), g.xmax.unwrap_or(12.0 / alpha), g.points)
}

fn run_classify(p: &Params) -> CliResult<Output> {
    let c = classify(p);
    let quadrant = classify_susy(p).ok().map(|q| q.class.to_string());
    let asymptote = if p.is_real_phase() { on_asymptote(p, TOL_LINE) } else { Asymptote::Neither };
    let hyper = ground_state_branch(p);
    let region = format!("{:?}", hyper.region);
    let result = json!({
        "class": c.class.to_string(),
        "boundary": c.boundary,
        "quadrant": quadrant,
        "asymptote": format!("{asymptote:?}"),
        "region": region,
        "K2": hyper.k2,
    });
    let mut table = Table::new(&["class", "boundary", "quadrant", "asymptote", "region", "K2"]);
    table.push(row![c.class.to_string(), c.boundary, quadrant.clone(), format!("{asymptote:?}"), region, hyper.k2]);
    let mut out = Output::new(result, table);
    out.text = Some(format!("{}\n", c.class));
    Ok(out)
}

/// Index of the last level with `A - nα > 0`, or `None` when there is none.
fn pt_last_bound(p: &Params) -> Option<usize> {
    if p.a <= 0.0 {
        return None;
    }
    let mut n = (p.a / p.alpha).ceil() as usize;
    while n > 0 && p.a - n as f64 * p.alpha <= 0.0 {
        n -= 1;
    }
    Some(n)
}

fn spectra_for(p: &Params, branch: BranchArg, n_max: NMaxArg) -> CliResult<Vec<SpectrumResult<f64>>> {
    let nm = match n_max {
        NMaxArg::Auto => NMax::Auto,
        NMaxArg::Upto(m) => NMax::Upto(m),
    };
    Ok(match branch {
        BranchArg::One => vec![eigenvalues_real(p, Branch::One, nm)?],
        BranchArg::Two => vec![eigenvalues_real(p, Branch::Two, nm)?],
        BranchArg::Both => vec![eigenvalues_real(p, Branch::One, nm)?, eigenvalues_real(p, Branch::Two, nm)?],
        BranchArg::Pt => {
            let (m, auto) = match n_max {
                NMaxArg::Upto(m) => (m, false),
                NMaxArg::Auto => (pt_last_bound(p).unwrap_or(0), true),
            };
            let (mut plus, mut minus) = eigenvalues_complex(p, m)?;
            if auto {
                plus.entries.retain(|e| !e.beyond_cutoff);
                minus.entries.retain(|e| !e.beyond_cutoff);
            }
            vec![plus, minus]
        }
    })
}

fn run_spectrum(p: &Params, branch: BranchArg, n_max: NMaxArg) -> CliResult<Output> {
    let lists = spectra_for(p, branch, n_max)?;
    let c = classify(p);
    let mut branches = Map::new();
    let mut table = Table::new(&["branch", "n", "re", "im", "beyond_cutoff"]);
    for s in &lists {
        let levels: Vec<Value> = s
            .entries
            .iter()
            .map(|e| json!({ "n": e.n, "re": e.energy.re, "im": e.energy.im, "beyond_cutoff": e.beyond_cutoff }))
            .collect();
        for e in &s.entries {
            table.push(row![s.branch.to_string(), e.n, e.energy.re, e.energy.im, e.beyond_cutoff]);
        }
        branches.insert(s.branch.to_string(), Value::Array(levels));
    }
    let result = json!({ "domain": c.class.to_string(), "boundary": c.boundary, "branches": branches });
    Ok(Output::new(result, table))
}

fn run_wavefunction(p: &Params, n: usize, sign: SignArg, g: &GridArgs, normalize: NormalizeArg) -> CliResult<Output> {
    let (xmin, xmax, points) = grid_xs(p.alpha, g);
    let sign = sign_of(sign);
    let norm = match normalize {
        NormalizeArg::None => Normalize::None,
        NormalizeArg::Sup => Normalize::Sup,
    };
    let field = sample_eigenfunction(p, n, sign, xmin, xmax, points, norm)?;
    let energy = eigenfunction_energy(p, n, sign);
    let argmax = field.argmax_abs().map(|k| field.xs()[k]);
    let mut table = Table::new(&["x", "re", "im", "abs2"]);
    let mut pts = Vec::with_capacity(field.len());
    for (&x, z) in field.xs().iter().zip(field.values()) {
        pts.push(json!({ "x": x, "re": z.re, "im": z.im, "abs2": z.norm_sqr() }));
        table.push(row![x, z.re, z.im, z.norm_sqr()]);
    }
    let result = json!({
        "n": n,
        "sign": sign.to_string(),
        "energy": complex(energy),
        "normalize": format!("{normalize:?}").to_lowercase(),
        "argmax_x": argmax,
        "points": pts,
    });
    Ok(Output::new(result, table))
}

fn run_potential(p: &Params, kind: PotentialKind, g: &GridArgs) -> CliResult<Output> {
    let (xmin, xmax, points) = grid_xs(p.alpha, g);
    let poly = kind.poly(p)?;
    let xs = uniform_grid(xmin, xmax, points)?;
    let mut table = Table::new(&["x", "re", "im"]);
    let mut pts = Vec::with_capacity(xs.len());
    for &x in &xs {
        let v = poly.eval(x);
        pts.push(json!({ "x": x, "re": v.re, "im": v.im }));
        table.push(row![x, v.re, v.im]);
    }
    Ok(Output::new(json!({ "kind": kind_label(kind), "points": pts }), table))
}

fn run_index(p: &Params, o: Optics, g: &GridArgs) -> CliResult<Output> {
    let (xmin, xmax, points) = grid_xs(p.alpha, g);
    let profile = index_profile(p, &o, xmin, xmax, points)?;
    let mut table = Table::new(&["x", "n_re", "n_im", "eps_re", "eps_im"]);
    let mut pts = Vec::with_capacity(profile.len());
    for (&x, n) in profile.xs().iter().zip(profile.values()) {
        let eps = permittivity(p, &o, x);
        pts.push(json!({ "x": x, "n_re": n.re, "n_im": n.im, "eps_re": eps.re, "eps_im": eps.im }));
        table.push(row![x, n.re, n.im, eps.re, eps.im]);
    }
    let result = json!({
        "k0": o.k0,
        "epsb": o.eps_b,
        "theta": o.theta,
        "energy": energy_from_incidence(&o),
        "background_index": o.background_index(),
        "points": pts,
    });
    Ok(Output::new(result, table))
}

const SCATTER_HEADER: &[&str] = &[
    "index",
    "E",
    "k",
    "T",
    "R",
    "R_right",
    "t_re",
    "t_im",
    "t_right_re",
    "t_right_im",
    "r_left_re",
    "r_left_im",
    "r_right_re",
    "r_right_im",
    "singular",
    "error",
];

fn scatter_json(index: usize, r: &ScatteringResult<f64>) -> Value {
    json!({
        "index": index,
        "E": r.e,
        "k": r.k,
        "T": r.t_sq,
        "R": r.r,
        "R_right": r.r_right_sq,
        "t": complex(r.t),
        "t_right": complex(r.t_right),
        "r_left": complex(r.r_left),
        "r_right": complex(r.r_right),
        "singular": r.singular,
    })
}

fn scatter_row(index: usize, r: &ScatteringResult<f64>) -> Vec<crate::output::Cell> {
    row![
        index,
        r.e,
        r.k,
        r.t_sq,
        r.r,
        r.r_right_sq,
        r.t.re,
        r.t.im,
        r.t_right.re,
        r.t_right.im,
        r.r_left.re,
        r.r_left.im,
        r.r_right.re,
        r.r_right.im,
        r.singular,
        ""
    ]
}

fn singular_warning(r: &ScatteringResult<f64>) -> String {
    format!("transmission capped at E = {}: spectral singularity", crate::output::float(r.e))
}

fn run_scatter_one(p: &Params, kind: PotentialKind, e: f64, opts: &ScatterOptions<f64>) -> CliResult<Output> {
    let r = scatter(p, kind, e, opts)?;
    let mut table = Table::new(SCATTER_HEADER);
    table.push(scatter_row(0, &r));
    let mut result = scatter_json(0, &r);
    result["kind"] = json!(kind_label(kind));
    result["L"] = json!(opts.window(p.alpha));
    let mut out = Output::new(result, table);
    if r.singular {
        out.warnings.push(singular_warning(&r));
    }
    Ok(out)
}

fn run_scatter_scan(
    p: &Params,
    kind: PotentialKind,
    (emin, emax): (f64, f64),
    samples: usize,
    from: usize,
    to: usize,
    opts: &ScatterOptions<f64>,
) -> CliResult<Output> {
    if from > to {
        return Err(CliError::Usage(format!("--from {from} exceeds --to {to}")));
    }
    let scan = transmission_scan_range(p, kind, emin, emax, samples, from..to, opts)?;
    let mut table = Table::new(SCATTER_HEADER);
    let mut warnings = Vec::new();
    let mut pts = Vec::with_capacity(scan.len());
    for pt in &scan {
        match &pt.outcome {
            ScanOutcome::Ok(r) => {
                pts.push(scatter_json(pt.index, r));
                table.push(scatter_row(pt.index, r));
                if r.singular {
                    warnings.push(singular_warning(r));
                }
            }
            ScanOutcome::Err { name, message } => {
                pts.push(json!({ "index": pt.index, "E": pt.e, "error": { "name": name, "message": message } }));
                let mut cells = row![pt.index, pt.e];
                cells.extend((2..SCATTER_HEADER.len() - 1).map(|_| crate::output::Cell::Empty));
                cells.push(format!("{name}: {message}").into());
                table.push(cells);
                warnings.push(format!("sample {} failed: {name}", pt.index));
            }
        }
    }
    let result = json!({
        "kind": kind_label(kind),
        "L": opts.window(p.alpha),
        "Emin": emin,
        "Emax": emax,
        "samples": samples,
        "from": from,
        "to": to,
        "points": pts,
    });
    let mut out = Output::new(result, table);
    out.warnings = warnings;
    Ok(out)
}

/// Values `start..=stop` in `steps` equal increments.
fn sweep_values(start: f64, stop: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![start],
        _ => (0..steps)
            .map(|k| if k + 1 == steps { stop } else { start + (stop - start) * k as f64 / (steps - 1) as f64 })
            .collect(),
    }
}

fn sweep_params(base: &ParamArgs, param: SweepParam, v: f64, pt_line: bool) -> CliResult<Params> {
    let half = base.alpha / 2.0;
    let (a, b, c) = match param {
        SweepParam::A => {
            let b = if pt_line { v + half } else { base.b.ok_or_else(|| missing("--B"))? };
            (v, b, base.c)
        }
        SweepParam::B => {
            let a = if pt_line { v - half } else { base.a.ok_or_else(|| missing("--A"))? };
            (a, v, base.c)
        }
        SweepParam::C => {
            let a = base.a.ok_or_else(|| missing("--A"))?;
            let b = if pt_line { a + half } else { base.b.ok_or_else(|| missing("--B"))? };
            (a, b, v)
        }
    };
    Ok(Params::new(a, b, c, base.alpha)?)
}

/// Normalizable closed-form levels, one entry per distinct energy: both real
/// ladders at `C = 0`, both conjugate lists on the PT line, none elsewhere.
fn bound_levels(p: &Params) -> Option<Vec<C64>> {
    let lists = if p.is_real_phase() {
        spectra_for(p, BranchArg::Both, NMaxArg::Auto).ok()?
    } else if p.is_on_pt_line() {
        spectra_for(p, BranchArg::Pt, NMaxArg::Auto).ok()?
    } else {
        return None;
    };
    let mut out: Vec<C64> = Vec::new();
    for e in lists.iter().flat_map(|s| s.bound_energies()) {
        if !out.iter().any(|z| (z - e).norm() <= 1e-12 * (1.0 + e.norm())) {
            out.push(e);
        }
    }
    Some(out)
}

fn run_sweep(
    base: &ParamArgs,
    param: SweepParam,
    (start, stop): (f64, f64),
    steps: usize,
    pt_line: bool,
) -> CliResult<Output> {
    let values = sweep_values(start, stop, steps);
    let params = values.iter().map(|&v| sweep_params(base, param, v, pt_line)).collect::<CliResult<Vec<_>>>()?;
    let rows: Vec<(Params, Value, Vec<crate::output::Cell>)> = params
        .par_iter()
        .zip(values.par_iter())
        .map(|(p, &v)| {
            let c = classify(p);
            let hyper = ground_state_branch(p);
            let levels = bound_levels(p);
            let ground = levels
                .as_ref()
                .and_then(|l| l.iter().copied().min_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im))));
            let count = levels.as_ref().map(Vec::len);
            let region = format!("{:?}", hyper.region);
            let j = json!({
                "value": v,
                "A": p.a,
                "B": p.b,
                "C": p.c,
                "class": c.class.to_string(),
                "boundary": c.boundary,
                "region": region,
                "K2": hyper.k2,
                "ground_energy": ground.map(complex),
                "bound_count": count,
            });
            let r = row![
                v,
                p.a,
                p.b,
                p.c,
                c.class.to_string(),
                c.boundary,
                region,
                hyper.k2,
                ground.map(|g| g.re),
                ground.map(|g| g.im),
                count
            ];
            (*p, j, r)
        })
        .collect();
    let mut table = Table::new(&[
        "value",
        "A",
        "B",
        "C",
        "class",
        "boundary",
        "region",
        "K2",
        "ground_re",
        "ground_im",
        "bound_count",
    ]);
    let mut pts = Vec::with_capacity(rows.len());
    for (_, j, r) in rows {
        pts.push(j);
        table.push(r);
    }
    let name = match param {
        SweepParam::A => "A",
        SweepParam::B => "B",
        SweepParam::C => "C",
    };
    let result = json!({ "param": name, "pt_line": pt_line, "points": pts });
    Ok(Output::new(result, table))
}

pub struct VerifyOptions {
    pub branch: Branch,
    pub k: usize,
    pub sign: Option<SignArg>,
    pub l: Option<f64>,
    pub n: usize,
    pub points: usize,
    pub tol: f64,
}

struct Check {
    name: String,
    passed: bool,
    mandatory: bool,
    value: f64,
    threshold: f64,
}

impl Check {
    fn new(name: impl Into<String>, mandatory: bool, value: f64, threshold: f64, passed: bool) -> Self {
        Self { name: name.into(), passed, mandatory, value, threshold }
    }

    /// Passes when `value <= threshold`.
    fn at_most(name: impl Into<String>, mandatory: bool, value: f64, threshold: f64) -> Self {
        Self::new(name, mandatory, value, threshold, value <= threshold)
    }
}

fn run_verify(p: &Params, suite: Suite, o: &VerifyOptions) -> CliResult<Output> {
    let mut warnings = Vec::new();
    let (checks, details) = match suite {
        Suite::Bernoulli => verify_bernoulli(p, o, &mut warnings)?,
        Suite::Miura => verify_miura(p, o)?,
        Suite::Kdv => verify_kdv(p, o, &mut warnings)?,
        Suite::Mkdv => verify_mkdv(p, o, &mut warnings)?,
        Suite::Ladder => verify_ladder(p, o, &mut warnings)?,
        Suite::Oracle => verify_oracle(p, o, &mut warnings)?,
    };
    let failed: Vec<String> = checks.iter().filter(|c| c.mandatory && !c.passed).map(|c| c.name.clone()).collect();
    let mut table = Table::new(&["name", "passed", "mandatory", "value", "threshold"]);
    let mut list = Vec::with_capacity(checks.len());
    for c in &checks {
        list.push(json!({
            "name": c.name,
            "passed": c.passed,
            "mandatory": c.mandatory,
            "value": c.value,
            "threshold": c.threshold,
        }));
        table.push(row![c.name.clone(), c.passed, c.mandatory, c.value, c.threshold]);
    }
    let suite_name = format!("{suite:?}").to_lowercase();
    let result = json!({ "suite": suite_name, "passed": failed.is_empty(), "checks": list, "details": details });
    let mut out = Output::new(result, table);
    out.warnings = warnings;
    out.failed = failed;
    Ok(out)
}

fn deform_xs(p: &Params, o: &VerifyOptions) -> CliResult<Vec<f64>> {
    Ok(uniform_grid(-5.0 / p.alpha, 5.0 / p.alpha, o.points)?)
}

fn verify_bernoulli(p: &Params, o: &VerifyOptions, warnings: &mut Vec<String>) -> CliResult<(Vec<Check>, Value)> {
    let xs = deform_xs(p, o)?;
    let b = bernoulli_residual(p, &xs)?;
    let t = tilde_invariance(p, &xs)?;
    let d = deformation_amplitude(p);
    if d == 0.0 {
        warnings.push("deformation amplitude is zero (exceptional line): v vanishes identically".into());
    }
    let checks = vec![
        Check::new("bernoulli_residual", true, b.max_residual, BERNOULLI_TOL, b.passed),
        Check::new("tilde_invariance", true, t.max_residual, BERNOULLI_TOL, t.passed),
    ];
    let details = json!({ "amplitude": d, "isospectral_offset": p.isospectral_offset(), "samples": xs.len() });
    Ok((checks, details))
}

fn sign_list(s: Option<SignArg>) -> Vec<Sign> {
    match s {
        Some(s) => vec![sign_of(s)],
        None => vec![Sign::Plus, Sign::Minus],
    }
}

fn candidate_json(c: &MiuraCandidate<f64>) -> Value {
    match c {
        MiuraCandidate::Original => json!({ "type": "Original" }),
        MiuraCandidate::PartnerPlus(b) => json!({ "type": "PartnerPlus", "branch": b.to_string() }),
        MiuraCandidate::Mapped { a, b } => json!({ "type": "Mapped", "A": complex(*a), "B": complex(*b) }),
    }
}

fn miura_json(m: &MiuraMatch<f64>) -> Value {
    json!({
        "form": format!("{:?}", m.form),
        "sign": m.sign.to_string(),
        "candidate": candidate_json(&m.candidate),
        "offset": complex(m.offset),
        "variance": m.variance,
        "max_deviation": m.check.max_residual,
        "passed": m.check.passed,
    })
}

fn verify_miura(p: &Params, o: &VerifyOptions) -> CliResult<(Vec<Check>, Value)> {
    let xs = deform_xs(p, o)?;
    let mut checks = Vec::new();
    let mut details = Vec::new();
    for sign in sign_list(o.sign) {
        let r = miura_check(p, sign, &xs)?;
        for (m, mandatory) in [(&r.standard, true), (&r.variant, false)] {
            let name = format!("miura_{}({sign})", format!("{:?}", m.form).to_lowercase());
            checks.push(Check::new(name, mandatory, m.variance, MIURA_VARIANCE_TOL, m.check.passed));
            details.push(miura_json(m));
        }
    }
    Ok((checks, json!({ "matches": details })))
}

fn wave_json(w: &WaveCheck<f64>) -> Value {
    json!({
        "convention": w.convention.to_string(),
        "c": complex(w.c),
        "relative": w.relative,
        "scale": w.scale,
        "max_residual": w.check.max_residual,
        "degenerate": w.degenerate,
        "passed": w.check.passed,
    })
}

fn wave_checks(label: &str, waves: &[WaveCheck<f64>], checks: &mut Vec<Check>, warnings: &mut Vec<String>) {
    for w in waves {
        checks.push(Check::new(format!("{label}({})", w.convention), false, w.relative, WAVE_REL_TOL, w.check.passed));
        if w.degenerate {
            warnings.push(format!("{label}({}): profile is constant on the samples, speed undetermined", w.convention));
        }
    }
    let best = waves.iter().map(|w| w.relative).fold(f64::INFINITY, f64::min);
    let any = waves.iter().any(|w| w.check.passed);
    checks.push(Check::new(format!("{label}_any_convention"), true, best, WAVE_REL_TOL, any));
}

fn verify_kdv(p: &Params, o: &VerifyOptions, warnings: &mut Vec<String>) -> CliResult<(Vec<Check>, Value)> {
    let xs = deform_xs(p, o)?;
    let u = miura_poly(p, MiuraForm::Standard, Sign::Plus).differentiated();
    let waves: Vec<_> = Convention::BOTH.iter().map(|&c| stationary_kdv_residual(&u, c, Speed::Fit, &xs)).collect();
    let mut checks = Vec::new();
    wave_checks("kdv", &waves, &mut checks, warnings);
    let mut contrasts = Vec::new();
    for conv in Convention::BOTH {
        let r = pair_contrast(p, conv, &xs);
        checks.push(Check::new(format!("pair_contrast({conv})"), false, r.ratio, 1e3, r.holds));
        contrasts.push(json!({
            "convention": conv.to_string(),
            "u_plus": wave_json(&r.u_plus),
            "u_minus": wave_json(&r.u_minus),
            "sum": wave_json(&r.sum),
            "difference": wave_json(&r.difference),
            "ratio": r.ratio,
            "holds": r.holds,
        }));
    }
    let details = json!({
        "profile": "v^2 + v'",
        "waves": waves.iter().map(wave_json).collect::<Vec<_>>(),
        "pair_contrast": contrasts,
    });
    Ok((checks, details))
}

fn verify_mkdv(p: &Params, o: &VerifyOptions, warnings: &mut Vec<String>) -> CliResult<(Vec<Check>, Value)> {
    let xs = deform_xs(p, o)?;
    let v = deformation_v_poly(p).differentiated();
    let waves: Vec<_> = Convention::BOTH.iter().map(|&c| stationary_mkdv_residual(&v, c, Speed::Fit, &xs)).collect();
    let mut checks = Vec::new();
    wave_checks("mkdv", &waves, &mut checks, warnings);
    let details = json!({ "profile": "v", "waves": waves.iter().map(wave_json).collect::<Vec<_>>() });
    Ok((checks, details))
}

fn oracle_grid(p: &Params, o: &VerifyOptions) -> CliResult<Grid> {
    Ok(Grid::new(o.l.unwrap_or(Grid::default_for(p.alpha).l), o.n)?)
}

fn complex_list(v: &[C64]) -> Value {
    Value::Array(v.iter().map(|&z| complex(z)).collect())
}

fn verify_ladder(p: &Params, o: &VerifyOptions, warnings: &mut Vec<String>) -> CliResult<(Vec<Check>, Value)> {
    let opts = LadderOptions { grid: oracle_grid(p, o)?, tolerance: o.tol };
    let r = susy_ladder_check(p, o.branch, o.k, &opts)?;
    warnings.extend(r.warnings.iter().cloned());
    let q = if o.branch == Branch::One { p.a } else { p.shifted_b() };
    let ground_err = r.ground_state.map_or(f64::INFINITY, |g| (g - C64::new(-q * q, 0.0)).norm());
    let checks = vec![
        Check::new("ladder_levels", true, r.max_error, r.tolerance, r.passed),
        Check::new(
            "level_count",
            true,
            r.minus.len() as f64 - r.plus.len() as f64,
            1.0,
            r.plus.len() + 1 == r.minus.len(),
        ),
        Check::at_most("ground_state", true, ground_err, o.tol),
    ];
    let offset: Vec<C64> = match r.ground_state {
        Some(g) => r.plus.iter().map(|&e| e - g).collect(),
        None => Vec::new(),
    };
    let details = json!({
        "branch": r.branch.to_string(),
        "minus": complex_list(&r.minus),
        "plus": complex_list(&r.plus),
        "ground_state": r.ground_state.map(complex),
        "plus_above_ground": complex_list(&offset),
        "levels": r.levels.iter().map(|l| json!({
            "minus": complex(l.minus),
            "plus": complex(l.plus),
            "abs_error": l.abs_error,
        })).collect::<Vec<_>>(),
    });
    Ok((checks, details))
}

fn verify_oracle(p: &Params, o: &VerifyOptions, warnings: &mut Vec<String>) -> CliResult<(Vec<Check>, Value)> {
    let analytic = if p.is_real_phase() || p.is_on_pt_line() {
        bound_levels(p).unwrap_or_default()
    } else {
        return Err(ScarfError::NotOnPtLine { offset: p.exceptional_offset() }.into());
    };
    let g = oracle_grid(p, o)?;
    let kind = PotentialKind::natural(p);
    let r = richardson_pair(p, kind, g.l, g.n)?;
    warnings.extend(r.warnings.iter().cloned());
    let m = match_energies(&analytic, &r.extrapolated, o.tol, 0.0);
    let checks = vec![
        Check::at_most("unmatched_analytic", true, m.unmatched_analytic.len() as f64, 0.0),
        Check::at_most("max_abs_error", true, m.max_abs_error(), o.tol),
        Check::at_most("unmatched_numeric", false, m.unmatched_numeric.len() as f64, 0.0),
    ];
    let details = json!({
        "kind": kind_label(kind),
        "L": g.l,
        "N": g.n,
        "analytic": complex_list(&analytic),
        "extrapolated": complex_list(&r.extrapolated),
        "pairs": m.pairs.iter().map(|q| json!({
            "analytic": complex(q.analytic),
            "numeric": complex(q.numeric),
            "abs_error": q.abs_error,
        })).collect::<Vec<_>>(),
        "unmatched_analytic": complex_list(&m.unmatched_analytic),
        "unmatched_numeric": complex_list(&m.unmatched_numeric),
    });
    Ok((checks, details))
}

fn run_atlas(alpha: f64, a_range: (f64, f64), b_range: (f64, f64), resolution: usize) -> CliResult<Output> {
    let at = atlas(alpha, a_range, b_range, (resolution, resolution))?;
    let mut table = Table::new(&["kind", "A", "B", "class", "quadrant", "region", "K2"]);
    let mut cells = Vec::with_capacity(at.cells.len());
    for c in &at.cells {
        let (class, quadrant, region) = (c.class.to_string(), c.quadrant.to_string(), format!("{:?}", c.region));
        cells.push(json!({ "A": c.a, "B": c.b, "class": class, "quadrant": quadrant, "region": region, "K2": c.k2 }));
        table.push(row!["cell", c.a, c.b, class, quadrant, region, c.k2]);
    }
    let mut lines = Vec::new();
    for line in &at.asymptotes {
        let kind = if line.asymptote.is_exceptional() { "exceptional" } else { "isospectral" };
        for &(a, b) in &line.points {
            table.push(row![kind, a, b, "", "", "", ""]);
        }
        lines.push(
            json!({ "asymptote": kind, "points": line.points.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>() }),
        );
    }
    for &(a, b) in &at.markers {
        table.push(row!["marker", a, b, "", "", "", ""]);
    }
    let result = json!({
        "alpha": at.alpha,
        "resolution": [at.resolution.0, at.resolution.1],
        "A_range": [a_range.0, a_range.1],
        "B_range": [b_range.0, b_range.1],
        "cells": cells,
        "asymptotes": lines,
        "markers": at.markers.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
    });
    Ok(Output::new(result, table))
}
