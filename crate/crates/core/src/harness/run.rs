//! Evaluating instances and assembling run reports.

use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{quotient_by_ideal, AlgebraError, LocalAlgebra};
use crate::invariants::{
    check_append_zero, check_change_of_basis, check_lift_invariance, check_small_n, cid_presentation, CidReport,
    Conjecture10Report, InvariantError, TheoremReport,
};
use crate::koszul::{KoszulComplex, KoszulError};
use crate::linalg::{FieldElement, FieldMatrix, PrimeField};
use crate::tor::{TorError, TorInstance, TorReport};

use super::instance::{parse_instance, InstanceError, InstanceSpec, Provenance, DEFAULT_BOUND_MAX};
use super::oracle::{brute_force_oracle, is_eligible};
use super::random::{instance_seeds, random_instance, GeneratorParams};
use super::report::{
    AlgebraInfo, Checks, Conjecture10Info, Finding, InstanceInfo, InstanceReport, KoszulInfo, RunReport, Summary,
    TheoremInfo,
};
use super::rng::SplitMix64;

/// Problems with the input rather than with the mathematics (exit code 2).
#[derive(Debug, Error)]
pub enum RunError {
    #[error("{source_name}: {error}")]
    Parse {
        source_name: String,
        error: InstanceError,
    },
    #[error("{source_name}: {message}")]
    Input { source_name: String, message: String },
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("{path}: {error}")]
    Io { path: String, error: std::io::Error },
    #[error("thread pool: {0}")]
    Pool(String),
}

impl RunError {
    fn input(spec: &InstanceSpec, message: impl ToString) -> Self {
        RunError::Input {
            source_name: spec.provenance.to_string(),
            message: message.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Every section the instance supports.
    Analyze,
    Koszul,
    Tor,
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    /// Random invertible changes of basis per instance.
    pub remark8_trials: usize,
    pub remark8_seed: u64,
    /// Skip the lift check when the lifted ring has more monomials below
    /// degree `D + 2` than this.
    pub lift_limit: Option<usize>,
    pub bound_max: u32,
    pub jobs: usize,
    /// Record wall-clock time per instance. Makes reports nondeterministic.
    pub timing: bool,
    /// Corrupt the top Koszul differential before checking.
    pub inject_fault: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            remark8_trials: 100,
            remark8_seed: 0x5EED,
            lift_limit: None,
            bound_max: DEFAULT_BOUND_MAX,
            jobs: 1,
            timing: false,
            inject_fault: false,
        }
    }
}

impl RunOptions {
    /// Lighter per-instance work suited to thousands of random instances.
    pub fn search() -> Self {
        Self {
            remark8_trials: 10,
            lift_limit: Some(2000),
            ..Self::default()
        }
    }
}

/// Everything learned about one instance.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub report: InstanceReport,
    pub violations: Vec<Finding>,
    pub findings: Vec<Finding>,
}

struct Recorder<'s> {
    index: usize,
    spec: &'s InstanceSpec,
    violations: Vec<Finding>,
    findings: Vec<Finding>,
}

impl Recorder<'_> {
    fn finding(&self, check: &str, detail: String) -> Finding {
        Finding {
            index: self.index,
            check: check.to_owned(),
            detail,
            instance: self.spec.to_text(),
        }
    }
    fn violation(&mut self, check: &str, detail: String) {
        let f = self.finding(check, detail);
        self.violations.push(f);
    }
    fn conjecture(&mut self, check: &str, detail: String) {
        let f = self.finding(check, detail);
        self.findings.push(f);
    }
    /// Records a violation when `ok` is false and passes `ok` through.
    fn expect(&mut self, ok: bool, check: &str, detail: impl FnOnce() -> String) -> bool {
        if !ok {
            self.violation(check, detail());
        }
        ok
    }
}

fn choose(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn random_invertible(field: PrimeField, n: usize, rng: &mut SplitMix64) -> FieldMatrix {
    let p = field.modulus() as u64;
    loop {
        let mut l = FieldMatrix::zeros(field, n, n);
        for r in 0..n {
            for c in 0..n {
                l.set(r, c, rng.below(p) as FieldElement);
            }
        }
        if l.rank() == n {
            return l;
        }
    }
}

fn koszul_input_error(spec: &InstanceSpec, e: KoszulError) -> RunError {
    RunError::input(spec, format!("koszul: {e}"))
}

fn invariant_input_error(spec: &InstanceSpec, e: InvariantError) -> RunError {
    RunError::input(spec, e)
}

pub fn evaluate(spec: &InstanceSpec, index: usize, mode: Mode, opts: &RunOptions) -> Result<Evaluation, RunError> {
    let started = Instant::now();
    if mode == Mode::Koszul && spec.koszul.is_none() {
        return Err(RunError::input(spec, "missing required key `koszul:`"));
    }
    if mode == Mode::Tor && spec.gens2.is_none() {
        return Err(RunError::input(spec, "missing required key `gens2:`"));
    }
    let algebra = LocalAlgebra::from_generators(
        spec.field,
        spec.vars.clone(),
        spec.gens.clone(),
        spec.bound,
        opts.bound_max,
    )
    .map_err(|e| RunError::input(spec, e))?;
    let mut rec = Recorder {
        index,
        spec,
        violations: Vec::new(),
        findings: Vec::new(),
    };

    let cid = CidReport::compute(&algebra).map_err(|e| koszul_input_error(spec, e))?;
    let mut checks = Checks {
        cid: rec.expect(cid.consistent(), "cid", || {
            format!(
                "cid via presentation {} vs via deviation {}",
                cid.via_presentation, cid.via_deviation
            )
        }),
        ..Checks::default()
    };

    let elements: Vec<Vec<FieldElement>> = match (&spec.koszul, mode) {
        (Some(xs), Mode::Analyze | Mode::Koszul) => xs
            .iter()
            .map(|x| algebra.element_from_poly(x))
            .collect::<Result<_, AlgebraError>>()
            .map_err(|e| RunError::input(spec, e))?,
        _ => Vec::new(),
    };
    let run_koszul = spec.koszul.is_some() && mode != Mode::Tor;

    let mut koszul = None;
    let mut theorem = None;
    let mut conjecture10 = None;
    if run_koszul {
        let mut complex = KoszulComplex::build(&algebra, &elements).map_err(|e| koszul_input_error(spec, e))?;
        if opts.inject_fault {
            complex.corrupt_differential();
        }
        let n = complex.n();
        checks.dd_zero = Some(rec.expect(complex.dd_zero(), "dd_zero", || "d∘d ≠ 0".to_owned()));
        let homology = complex.homology();
        let h = homology.report();
        let prop7 = homology.killed_by_elements() && homology.action_is_induced();
        checks.prop7 = Some(rec.expect(prop7, "prop7", || "x_j·Z_i ⊄ B_i".to_owned()));
        // With n = 0 the complex is A itself and χ = ℓ(A); vanishing needs n > 0.
        if n > 0 {
            rec.expect(h.euler == 0, "euler", || format!("χ = {}", h.euler));
        }

        let quotient = quotient_by_ideal(&algebra, &elements).map_err(|e| RunError::input(spec, e))?;
        let t = TheoremReport::evaluate(
            n,
            h.nu_h1().unwrap_or(0),
            cid_presentation(algebra.presentation()),
            cid_presentation(quotient.presentation()),
        );
        rec.expect(t.holds(), "theorem", || {
            format!("ν(H_1) = {} < bound {} (slack {})", t.nu_h1, t.bound, t.slack)
        });
        let c10 = Conjecture10Report::from_theorem(&t);
        if !c10.met {
            let detail = format!("ν(H_1) = {} < n = {}", c10.nu_h1, c10.n);
            if c10.is_theorem_violation() {
                rec.violation("conjecture10", detail);
            } else {
                rec.conjecture("conjecture10", detail);
            }
        }
        theorem = Some(TheoremInfo {
            bound: t.bound,
            slack: t.slack,
        });
        conjecture10 = Some(Conjecture10Info {
            met: c10.met,
            slack: c10.slack,
        });

        if n > 0 {
            let mut rng = SplitMix64::new(opts.remark8_seed.wrapping_add(index as u64));
            let mut ok = true;
            for _ in 0..opts.remark8_trials {
                let l = random_invertible(algebra.field(), n, &mut rng);
                ok &= check_change_of_basis(&algebra, &elements, &h, &l).map_err(|e| invariant_input_error(spec, e))?;
            }
            checks.remark8 = Some(rec.expect(ok, "remark8", || "homology changed under a change of basis".to_owned()));
        }
        let disc11 = check_append_zero(&algebra, &elements, &h).map_err(|e| invariant_input_error(spec, e))?;
        checks.disc11 = Some(rec.expect(disc11, "disc11", || "H_1(x, 0) ≠ H_1(x) ⊕ H_0(x)".to_owned()));
        if let Some(small) = check_small_n(&algebra, &elements, &h).map_err(|e| invariant_input_error(spec, e))? {
            checks.small_n = Some(rec.expect(small.holds, "small_n", || format!("{small:?}")));
        }
        if is_eligible(&algebra, n) {
            let oracle = brute_force_oracle(&algebra, &elements).expect("eligibility checked");
            let agree = oracle.dims == h.dims && oracle.nus == h.nus;
            checks.oracle = Some(rec.expect(agree, "oracle", || {
                format!("engine {:?}/{:?} vs oracle {:?}/{:?}", h.dims, h.nus, oracle.dims, oracle.nus)
            }));
        }
        koszul = Some(KoszulInfo {
            n,
            h_dims: h.dims.clone(),
            h_nus: h.nus.clone(),
            euler: h.euler,
        });
    }

    if mode != Mode::Tor {
        let lifted_vars = elements.len() + algebra.nvars();
        let lifted_size = choose(lifted_vars + algebra.bound() as usize + 1, lifted_vars);
        if opts.lift_limit.is_none_or(|cap| lifted_size <= cap) {
            let lift = check_lift_invariance(&algebra, &elements);
            checks.lift = Some(match lift {
                Ok(_) => true,
                Err(InvariantError::LiftMismatch(detail)) => {
                    rec.violation("lift", detail);
                    false
                }
                Err(e) => return Err(invariant_input_error(spec, e)),
            });
        }
    }

    let mut tor = None;
    if let (Some(second), Mode::Analyze | Mode::Tor) = (&spec.gens2, mode) {
        let inst = TorInstance::new(
            spec.field,
            spec.vars.clone(),
            spec.gens.clone(),
            second.clone(),
            (Some(algebra.bound()), None),
            None,
            opts.bound_max,
        )
        .map_err(|e| RunError::input(spec, e))?;
        let r = TorReport::compute(&inst).map_err(|e: TorError| RunError::input(spec, e))?;
        rec.expect(r.agree, "tor", || {
            format!(
                "ideals ℓ={} ν={} vs diagonal ℓ={} ν={}",
                r.len_ideal, r.nu_ideal, r.len_diag, r.nu_diag
            )
        });
        if r.c9_slack < 0 {
            rec.conjecture("conjecture9", format!("ν(Tor_1) − n = {}", r.c9_slack));
        }
        tor = Some(r);
    }

    let (seed, path) = match &spec.provenance {
        Provenance::Seed { seed } => (Some(*seed), None),
        Provenance::Path { path } => (None, Some(path.clone())),
        other => (None, Some(other.to_string())),
    };
    let report = InstanceReport {
        index,
        instance: InstanceInfo {
            seed,
            path,
            p: spec.field.modulus(),
            vars: spec.vars.clone(),
            gens: spec.gens_text(),
            bound: algebra.bound(),
            koszul: spec.koszul_text(),
            gens2: spec.gens2_text(),
        },
        algebra: AlgebraInfo {
            length: algebra.length(),
            embdim: algebra.embdim(),
            cid_pres: cid.via_presentation,
            cid_dev: cid.via_deviation,
        },
        koszul,
        theorem,
        conjecture10,
        tor,
        checks,
        timing_ms: opts.timing.then(|| started.elapsed().as_secs_f64() * 1e3),
    };
    Ok(Evaluation {
        report,
        violations: rec.violations,
        findings: rec.findings,
    })
}

/// Evaluates `specs` on `opts.jobs` threads; results are merged in input order.
pub fn run_specs(
    command: &str,
    specs: &[InstanceSpec],
    mode: Mode,
    opts: &RunOptions,
) -> Result<RunReport, RunError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| RunError::Pool(e.to_string()))?;
    let evaluations: Vec<Evaluation> = pool.install(|| {
        specs
            .par_iter()
            .enumerate()
            .map(|(i, s)| evaluate(s, i, mode, opts))
            .collect::<Result<_, _>>()
    })?;
    Ok(assemble(command, None, None, evaluations))
}

fn assemble(command: &str, seed: Option<u64>, params: Option<GeneratorParams>, evals: Vec<Evaluation>) -> RunReport {
    let mut instances = Vec::with_capacity(evals.len());
    let mut violations = Vec::new();
    let mut findings = Vec::new();
    for e in evals {
        instances.push(e.report);
        violations.extend(e.violations);
        findings.extend(e.findings);
    }
    let tightness_witnesses: Vec<usize> = instances
        .iter()
        .filter(|r| r.theorem.is_some_and(|t| t.slack == 0))
        .map(|r| r.index)
        .collect();
    RunReport {
        command: command.to_owned(),
        seed,
        params,
        summary: Summary {
            instances: instances.len(),
            violations: violations.len(),
            findings: findings.len(),
            tight: tightness_witnesses.len(),
        },
        instances,
        violations,
        findings,
        tightness_witnesses,
    }
}

pub fn load_instance(path: &str) -> Result<InstanceSpec, RunError> {
    let text = std::fs::read_to_string(path).map_err(|error| RunError::Io {
        path: path.to_owned(),
        error,
    })?;
    parse_instance(&text, Provenance::Path { path: path.to_owned() }).map_err(|error| RunError::Parse {
        source_name: path.to_owned(),
        error,
    })
}

pub fn run_analyze(path: &str, opts: &RunOptions) -> Result<RunReport, RunError> {
    run_specs("analyze", &[load_instance(path)?], Mode::Analyze, opts)
}

pub fn run_koszul(path: &str, opts: &RunOptions) -> Result<RunReport, RunError> {
    run_specs("koszul", &[load_instance(path)?], Mode::Koszul, opts)
}

pub fn run_tor(path: &str, opts: &RunOptions) -> Result<RunReport, RunError> {
    run_specs("tor", &[load_instance(path)?], Mode::Tor, opts)
}

/// `count` random instances; instance `i` uses the `i`-th output of the
/// splitmix64 stream seeded with `seed` as its own seed.
pub fn run_search(seed: u64, count: usize, params: GeneratorParams, opts: &RunOptions) -> Result<RunReport, RunError> {
    params.validate().map_err(RunError::Params)?;
    let specs: Vec<InstanceSpec> = instance_seeds(seed, count)
        .into_iter()
        .map(|s| random_instance(s, &params))
        .collect();
    let mut report = run_specs("search", &specs, Mode::Analyze, opts)?;
    report.seed = Some(seed);
    report.params = Some(params);
    Ok(report)
}

/// The built-in corpus with every applicable check.
pub fn run_corpus(opts: &RunOptions) -> Result<RunReport, RunError> {
    run_specs("corpus", &super::corpus::corpus(), Mode::Analyze, opts)
}
