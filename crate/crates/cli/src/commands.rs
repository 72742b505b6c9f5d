use std::path::Path;
use std::time::Instant;

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ncrank_core::exactfield::{Field, FieldDesc, PrimeField, Rationals};
use ncrank_core::linalg::{Mat, Specialization};
use ncrank_core::mspace::{verify_shrunk, MatrixSpace, ShrunkWitness};
use ncrank_core::ncrank::{degree_bounds, ncrk_main, FullCert, NcrkConfig, NcrkResult};
use ncrank_core::oracle::{oracle_report, OracleConfig};
use ncrank_core::roundup::RoundUpConfig;
use ncrank_core::wong::{second_wong, wong_chain, WongVerdict};

use crate::error::{CliError, EXIT_OK, EXIT_VERIFY};
use crate::instance::{
    format_mat, format_subspace, format_vec, json_error, parse_element, parse_mat, parse_subspace, read_file,
    InstanceFile,
};
use crate::report::*;

/// Flags shared by every subcommand.
#[derive(Debug, Clone, PartialEq)]
pub struct Global {
    pub seed: u64,
    pub deterministic: bool,
    pub sample_size: u64,
    pub cap_dim: usize,
}

impl Default for Global {
    fn default() -> Self {
        Global {
            seed: 0,
            deterministic: false,
            sample_size: 1 << 32,
            cap_dim: 2000,
        }
    }
}

/// JSON text to print and the exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub json: String,
    pub code: u8,
}

impl Output {
    fn new<T: serde::Serialize>(value: &T, code: u8) -> Self {
        Output {
            json: serde_json::to_string_pretty(value).expect("report types serialize"),
            code,
        }
    }
}

macro_rules! with_field {
    ($desc:expr, $f:ident => $body:expr) => {
        match $desc {
            FieldDesc::Rational => {
                let $f = Rationals;
                $body
            }
            FieldDesc::Prime(p) => {
                let $f = PrimeField::new(p)?;
                $body
            }
        }
    };
}

fn skeleton(command: &str, g: &Global, inst: Option<&InstanceFile>, field: Option<FieldDesc>) -> ResultFile {
    ResultFile {
        tool: "ncrank".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: command.into(),
        seed: g.seed,
        instance: inst.and_then(|i| i.name.clone()),
        field: field.map(|f| f.to_string()),
        n: inst.map(|i| i.n),
        config: RunConfig {
            trials: 0,
            sample_size: g.sample_size,
            cap_dim: g.cap_dim,
            deterministic: g.deterministic,
            d_cap: None,
            q: None,
        },
        rank: None,
        ncrank: None,
        wong: None,
        bounds: None,
        oracle: None,
        expected_ok: None,
        timing_ms: 0,
    }
}

/// Stamps the timing and serializes; an unmet `expected` block gives exit 1.
pub fn finish(mut res: ResultFile, start: Instant) -> Output {
    res.timing_ms = start.elapsed().as_millis() as u64;
    let code = if res.expected_ok == Some(false) { EXIT_VERIFY } else { EXIT_OK };
    Output::new(&res, code)
}

fn witness_json<F: Field>(f: &F, w: &ShrunkWitness<F::El>) -> WitnessJson {
    WitnessJson {
        u: format_subspace(f, &w.u),
        w: format_subspace(f, &w.w),
        c: w.c,
    }
}

fn cert_json<F: Field>(f: &F, c: &FullCert<F::El>) -> CertJson {
    CertJson {
        degree: c.degree,
        coeffs: c.coeffs.iter().map(|m| format_mat(f, m)).collect(),
        achieved_rank: c.achieved_rank,
    }
}

/// `(n+1)! / (s+1)!`.
pub fn degree_limit(n: usize, s: usize) -> BigUint {
    (s + 2..=n + 1).fold(BigUint::from(1u32), |acc, k| acc * BigUint::from(k))
}

pub fn cmd_rank(path: &Path, trials: usize, g: &Global) -> Result<Output, CliError> {
    let start = Instant::now();
    let inst = InstanceFile::load(path)?;
    Ok(finish(rank_result(&inst, trials, g)?, start))
}

pub fn rank_result(inst: &InstanceFile, trials: usize, g: &Global) -> Result<ResultFile, CliError> {
    let desc = inst.field_desc()?;
    let mut res = skeleton("rank", g, Some(inst), Some(desc));
    res.config.trials = trials;
    with_field!(desc, f => {
        let space = inst.space(f)?;
        let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
        let est = space.commutative_rank_estimate(trials, g.sample_size, &mut rng);
        res.rank = Some(RankSection {
            rank: est.rank,
            coeffs: format_vec(&f, &est.coeffs),
            trials: est.trials,
            sample_size: est.sample_size,
            failure_bound: est.failure_bound,
        });
    });
    if let Some(want) = inst.expected.as_ref().and_then(|e| e.rank) {
        res.expected_ok = Some(res.rank.as_ref().is_some_and(|r| r.rank == want));
    }
    Ok(res)
}

pub fn ncrank_config(trials: usize, g: &Global) -> NcrkConfig {
    let mut round_up = RoundUpConfig::default();
    if g.deterministic {
        round_up.mode = Specialization::Deterministic;
    }
    NcrkConfig {
        trials,
        sample_size: g.sample_size,
        cap_dim: g.cap_dim,
        round_up,
    }
}

fn ncrank_section<F: Field>(f: &F, r: &NcrkResult<F::El>) -> NcrankSection {
    NcrankSection {
        ncrk: r.ncrk,
        n: r.n,
        start_rank: r.start_rank,
        trace: r.trace.iter().map(|&(d, k)| [d, k]).collect(),
        max_degree: r.trace.iter().map(|t| t.0).max().unwrap_or(1),
        degree_limit: degree_limit(r.n, r.start_rank).to_string(),
        full_cert: cert_json(f, &r.rank_cert),
        shrunk: r.shrunk.as_ref().map(|w| witness_json(f, w)),
    }
}

pub fn cmd_ncrank(path: &Path, trials: usize, field_override: Option<&str>, g: &Global) -> Result<Output, CliError> {
    let start = Instant::now();
    let inst = InstanceFile::load(path)?;
    Ok(finish(ncrank_result(&inst, trials, field_override, g)?, start))
}

pub fn ncrank_result(
    inst: &InstanceFile,
    trials: usize,
    field_override: Option<&str>,
    g: &Global,
) -> Result<ResultFile, CliError> {
    let desc = match field_override {
        Some(s) => s.parse::<FieldDesc>()?,
        None => inst.field_desc()?,
    };
    let mut res = skeleton("ncrank", g, Some(inst), Some(desc));
    res.config.trials = trials;
    let config = ncrank_config(trials, g);
    with_field!(desc, f => {
        let space = inst.space(f)?;
        let r = ncrk_main(&space, g.seed, &config)?;
        res.ncrank = Some(ncrank_section(&f, &r));
    });
    if let Some(want) = inst.expected.as_ref().and_then(|e| e.ncrk) {
        res.expected_ok = Some(res.ncrank.as_ref().is_some_and(|r| r.ncrk == want));
    }
    Ok(res)
}

/// `pivot` is a basis index (`"1"`) or comma-separated coefficients
/// (`"1,0,-2"`).
fn pivot_matrix<F: Field>(space: &MatrixSpace<F>, pivot: &str) -> Result<Mat<F::El>, CliError> {
    let f = space.field_ref();
    if !pivot.contains(',') {
        if let Ok(i) = pivot.trim().parse::<usize>() {
            if space.is_empty() && i == 0 {
                return Ok(Mat::zeros(f, space.n(), space.n()));
            }
            return space
                .basis()
                .get(i)
                .cloned()
                .ok_or_else(|| CliError::input(format!("pivot index {i} out of range (m = {})", space.len())));
        }
    }
    let coeffs = pivot
        .split(',')
        .map(|t| parse_element(f, t))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(space.combine(&coeffs)?)
}

pub fn cmd_wong(path: &Path, pivot: &str, g: &Global) -> Result<Output, CliError> {
    let start = Instant::now();
    let inst = InstanceFile::load(path)?;
    let desc = inst.field_desc()?;
    let mut res = skeleton("wong", g, Some(&inst), Some(desc));
    with_field!(desc, f => {
        let space = inst.space(f)?;
        let a = pivot_matrix(&space, pivot)?;
        let w = second_wong(&f, &a, &space, None)?;
        let (verdict, first_escape) = match w.verdict {
            WongVerdict::Contained => ("contained", None),
            WongVerdict::Escaped { index } => ("escaped", Some(index)),
            WongVerdict::Capped => ("capped", None),
        };
        let witness = match &w.witness {
            Some(u) if u.dim() > 0 => Some(witness_json(&f, &ShrunkWitness::from_subspace(&space, u.clone())?)),
            _ => None,
        };
        let chain = if first_escape.is_some() {
            let c = wong_chain(&f, &a, &space, &w)?;
            Some(ChainJson {
                indices: c.indices.clone(),
                vectors: c.vs.iter().map(|v| format_vec(&f, v)).collect(),
            })
        } else {
            None
        };
        res.wong = Some(WongSection {
            pivot: format_mat(&f, &a),
            pivot_rank: f.rank(&a),
            stage_dims: w.stages.iter().map(|s| s.dim()).collect(),
            verdict: verdict.into(),
            first_escape,
            witness,
            chain,
        });
    });
    Ok(finish(res, start))
}

pub fn cmd_bounds(n: u32, m: u32, g: &Global) -> Result<Output, CliError> {
    let start = Instant::now();
    let b = degree_bounds(n, m)?;
    let mut res = skeleton("bounds", g, None, None);
    res.bounds = Some(BoundsSection {
        n,
        m,
        sigma_factorial: b.sigma_factorial.to_string(),
        sigma_derksen: b.sigma_derksen.to_string(),
        beta_derksen: b.beta_derksen.to_string(),
        beta_explicit: b.beta_explicit.to_string(),
    });
    Ok(finish(res, start))
}

/// Without `q` the instance's own field is used.
pub fn cmd_oracle(path: &Path, q: Option<u64>, d_cap: usize, trials: usize, g: &Global) -> Result<Output, CliError> {
    let start = Instant::now();
    let inst = InstanceFile::load(path)?;
    let desc = match q {
        Some(q) => format!("Fp:{q}").parse::<FieldDesc>()?,
        None => inst.field_desc()?,
    };
    let mut res = skeleton("oracle", g, Some(&inst), Some(desc));
    res.config.trials = trials;
    res.config.d_cap = Some(d_cap);
    res.config.q = q;
    let config = OracleConfig {
        d_cap,
        trials,
        sample_size: g.sample_size,
        ..OracleConfig::default()
    };
    with_field!(desc, f => {
        let space = inst.space(f)?;
        let r = oracle_report(&space, g.seed, &config)?;
        res.oracle = Some(OracleSection {
            enumeration_field: r.enumeration_field.to_string(),
            exhaustive: r.exhaustive,
            ncrk_lower: r.ncrk_lower,
            ncrk_upper: r.ncrk_upper,
            rank_lower: r.rank_lower,
            witness: r.witness.as_ref().map(|w| witness_json(&f, w)),
        });
    });
    Ok(finish(res, start))
}

pub fn load_result(path: &Path) -> Result<ResultFile, CliError> {
    let text = read_file(path)?;
    serde_json::from_str(&text).map_err(|e| json_error(&path.display().to_string(), &e))
}

pub fn cmd_verify(instance: &Path, result: &Path) -> Result<Output, CliError> {
    let inst = InstanceFile::load(instance)?;
    let res = load_result(result)?;
    let report = verify_result(&inst, &res)?;
    let code = if report.verified { EXIT_OK } else { EXIT_VERIFY };
    Ok(Output::new(&report, code))
}

fn check(name: &str, ok: bool, detail: Option<String>) -> Check {
    Check {
        name: name.into(),
        ok,
        detail,
    }
}

fn parse_witness<F: Field>(f: &F, w: &WitnessJson, n: usize) -> Result<ShrunkWitness<F::El>, CliError> {
    Ok(ShrunkWitness {
        u: parse_subspace(f, &w.u, n)?,
        w: parse_subspace(f, &w.w, n)?,
        c: w.c,
    })
}

/// `Ok(false)` for a witness that fails the check, `Err` for one that
/// does not fit the instance.
fn check_witness<F: Field>(space: &MatrixSpace<F>, w: &WitnessJson) -> Result<(bool, Option<String>), CliError> {
    let wit = parse_witness(space.field_ref(), w, space.n())?;
    match verify_shrunk(space, &wit) {
        Ok(ok) => Ok((ok, None)),
        Err(e) if crate::error::exit_code(&e) == EXIT_VERIFY => Ok((false, Some(e.to_string()))),
        Err(e) => Err(e.into()),
    }
}

/// Re-checks every certificate in `res` against the instance without
/// rerunning the computation.
pub fn verify_result(inst: &InstanceFile, res: &ResultFile) -> Result<VerifyReport, CliError> {
    if let Some(n) = res.n {
        if n != inst.n {
            return Err(CliError::input(format!(
                "result is for n = {n}, instance has n = {}",
                inst.n
            )));
        }
    }
    let desc = match &res.field {
        Some(s) => s.parse::<FieldDesc>()?,
        None => inst.field_desc()?,
    };
    let mut checks = Vec::new();
    with_field!(desc, f => {
        let space = inst.space(f)?;
        let n = space.n();
        if let Some(r) = &res.rank {
            if r.coeffs.len() != space.len() {
                return Err(CliError::input(format!(
                    "rank certificate has {} coefficients for {} basis matrices",
                    r.coeffs.len(),
                    space.len()
                )));
            }
            let coeffs = r.coeffs.iter().map(|c| parse_element(&f, c)).collect::<Result<Vec<_>, _>>()?;
            let got = f.rank(&space.combine(&coeffs)?);
            checks.push(check("rank", got == r.rank, Some(format!("recomputed {got}, claimed {}", r.rank))));
        }
        if let Some(s) = &res.ncrank {
            if s.n != n {
                return Err(CliError::input(format!("certificate is for n = {}, instance has n = {n}", s.n)));
            }
            let c = &s.full_cert;
            if c.degree == 0 || c.coeffs.len() != space.len() {
                return Err(CliError::input(format!(
                    "certificate has {} blocks of degree {} for {} basis matrices",
                    c.coeffs.len(),
                    c.degree,
                    space.len()
                )));
            }
            let blocks = c.coeffs.iter().map(|b| parse_mat(&f, b, c.degree)).collect::<Result<Vec<_>, _>>()?;
            let cert = FullCert {
                degree: c.degree,
                coeffs: blocks,
                achieved_rank: c.achieved_rank,
            };
            let ok = cert.verify(&space)? && cert.achieved_rank == s.ncrk * c.degree && s.ncrk <= n;
            checks.push(check("full_cert", ok, Some(format!("degree {}, claimed rank {}", c.degree, c.achieved_rank))));
            match &s.shrunk {
                Some(w) => {
                    let (ok, detail) = check_witness(&space, w)?;
                    let tight = w.c + s.ncrk == n;
                    checks.push(check("shrunk_witness", ok && tight, detail.or(Some(format!("c = {}", w.c)))));
                }
                None => checks.push(check("full_rank", s.ncrk == n, None)),
            }
        }
        if let Some(o) = &res.oracle {
            if let Some(w) = &o.witness {
                let (ok, detail) = check_witness(&space, w)?;
                checks.push(check("oracle_witness", ok && w.c + o.ncrk_upper == n, detail));
            }
        }
        if let Some(w) = &res.wong {
            if let Some(wit) = &w.witness {
                let (ok, detail) = check_witness(&space, wit)?;
                checks.push(check("wong_witness", ok, detail));
            }
        }
    });
    if checks.is_empty() {
        return Err(CliError::input("result file carries nothing to verify"));
    }
    Ok(VerifyReport {
        verified: checks.iter().all(|c| c.ok),
        checks,
    })
}
