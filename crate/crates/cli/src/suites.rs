//! Seeded randomized verification: each suite draws random instances and
//! checks the declared relations of the corresponding bound report.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use kronrad::bounds::{cor1_equality_check, e14_chain, hou_du_gap, p3_chain, refined_bounds, th4_chain};
use kronrad::generators::{random_complex, random_doubly_stochastic, random_real, stream_rng};
use kronrad::pnorm::{
    circ3_real_norm2, circ_minus_a_b, circ_norm2_closed, circ_norm2_nonneg_cases, gram_equicorrelated_norm,
    tfinal_bounds,
};
use kronrad::polyroots::est_poly_decomposition;
use kronrad::schurpower::{
    cor2_check, dp_plus_t, radial_generator, schur_radius_chain, tforallm_scan, th10_chain, tref_check, tref_direct,
    RadialProfile,
};
use kronrad::semihilbert::{p_cor1_equality_check, p_kron_suite, random_p};
use kronrad::{
    anti_diagonal, circulant, companion, kron, kron_pnorm_bounds, radius_antidiagonal, root_bound_report,
    spectral_norm, w, BoundReport, CMatrix, CPoly, Exponent, PSpace, C64,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::render;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    P3,
    Th4,
    Cor1,
    Thm41,
    Copnorm,
    Thm42,
    Tfinal,
    Semihilbert,
    Schur,
    Tref,
    Tforallm,
    Polyroots,
    HouDu,
    P2x2,
}

impl Suite {
    pub const ALL: [Suite; 14] = [
        Suite::P3,
        Suite::Th4,
        Suite::Cor1,
        Suite::Thm41,
        Suite::Copnorm,
        Suite::Thm42,
        Suite::Tfinal,
        Suite::Semihilbert,
        Suite::Schur,
        Suite::Tref,
        Suite::Tforallm,
        Suite::Polyroots,
        Suite::HouDu,
        Suite::P2x2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::P3 => "p3",
            Suite::Th4 => "th4",
            Suite::Cor1 => "cor1",
            Suite::Thm41 => "thm4_1",
            Suite::Copnorm => "copnorm",
            Suite::Thm42 => "thm4_2",
            Suite::Tfinal => "tfinal",
            Suite::Semihilbert => "semihilbert",
            Suite::Schur => "schur",
            Suite::Tref => "tref",
            Suite::Tforallm => "tforallm",
            Suite::Polyroots => "polyroots",
            Suite::HouDu => "hou_du",
            Suite::P2x2 => "p2x2",
        }
    }

    /// Results exercised by the suite, printed in its header.
    pub fn anchors(self) -> &'static [&'static str] {
        match self {
            Suite::P3 => &["Kronecker lower bound", "Holbrook bound", "row and column sum interpolation"],
            Suite::Th4 => &["Holbrook bound", "comparison matrix C", "modulus comparison matrix C°", "symmetrized bound"],
            Suite::Cor1 => &["Holbrook equality characterization"],
            Suite::Thm41 => &["l_p Kronecker lower estimate", "row and column sum interpolation"],
            Suite::Copnorm => &["scaled doubly stochastic collapse"],
            Suite::Thm42 => &["circulant Circ(-a, b, ..., b) closed form", "equicorrelated Gram closed form"],
            Suite::Tfinal => &["circulant l_p bracket"],
            Suite::Semihilbert => &["reduced operator intertwining", "P-seminorm Kronecker chain"],
            Suite::Schur => &["Schur product chain", "Schur power bound", "Schur equality one-way test"],
            Suite::Tref => &["Schur power equality characterization", "downward closure"],
            Suite::Tforallm => &["all-powers Schur equality scan", "rank-one characterization"],
            Suite::Polyroots => &["Fujii-Kubo root bound", "circulant-split companion bound"],
            Suite::HouDu => &["block norm comparison"],
            Suite::P2x2 => &["anti-diagonal closed form"],
        }
    }

    fn index(self) -> u64 {
        Suite::ALL.iter().position(|&s| s == self).expect("listed") as u64
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
            format!("unknown suite {s:?}; expected one of {}", names.join(", "))
        })
    }
}

impl Serialize for Suite {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub seed: u64,
    pub trials: u64,
    /// Largest dimension of the main random factor.
    pub n_max: usize,
    /// Largest Schur power.
    pub m_max: usize,
    pub p_set: Vec<Exponent>,
    /// Most negative slack accepted.
    pub tol: f64,
    pub suites: Vec<Suite>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            trials: 20,
            n_max: 4,
            m_max: 3,
            p_set: vec![
                Exponent::Finite(1.0),
                Exponent::Finite(1.5),
                Exponent::Finite(2.0),
                Exponent::Finite(3.0),
                Exponent::Infinity,
            ],
            tol: 1e-8,
            suites: Suite::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TrialError {
    pub message: String,
    pub numerical: bool,
}

/// One line of `verify` output.
#[derive(Debug, Clone, Serialize)]
pub struct TrialRecord {
    pub suite: Suite,
    pub trial: u64,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_slack: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub reports: Vec<BoundReport<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<TrialError>,
}

impl TrialRecord {
    pub fn violated(&self) -> bool {
        !self.ok && self.error.is_none()
    }
}

#[derive(Debug, Default)]
struct Outcome {
    reports: Vec<BoundReport<f64>>,
    checks: Vec<Check>,
}

impl Outcome {
    fn report(&mut self, r: BoundReport<f64>) {
        self.reports.push(r);
    }

    fn check(&mut self, name: &'static str, pass: bool) {
        self.checks.push(Check { name, pass });
    }
}

fn dim(rng: &mut ChaCha8Rng, lo: usize, hi: usize) -> usize {
    rng.random_range(lo..=hi.max(lo))
}

fn scalar(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

fn pick<T: Copy>(items: &[T], k: u64) -> T {
    items[(k % items.len() as u64) as usize]
}

/// Nonnegative matrix with entries in `[0.05, 1)`, so its diagonal is nonzero.
fn positive(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    random_real(rng, n, n, 0.05, 1.0)
}

/// Runs trial `k` of `suite` on its own random stream.
pub fn run_trial(suite: Suite, cfg: &VerifyConfig, k: u64) -> TrialRecord {
    let mut rng = stream_rng(cfg.seed, (suite.index() << 32) | k);
    let result = trial(suite, cfg, k, &mut rng);
    let (ok, min_slack, checks, reports, error) = match result {
        Ok(mut o) => {
            for r in &mut o.reports {
                r.instance.seed = Some(cfg.seed);
                r.instance.trial = Some(k);
            }
            let slack = o.reports.iter().map(BoundReport::min_slack).fold(f64::INFINITY, f64::min);
            let ok = slack >= -cfg.tol && o.checks.iter().all(|c| c.pass);
            (ok, slack.is_finite().then_some(slack), o.checks, o.reports, None)
        }
        Err(e) => (
            false,
            None,
            Vec::new(),
            Vec::new(),
            Some(TrialError {
                message: e.to_string(),
                numerical: e.is_numerical(),
            }),
        ),
    };
    TrialRecord {
        suite,
        trial: k,
        ok,
        min_slack,
        checks,
        reports,
        error,
    }
}

fn trial(suite: Suite, cfg: &VerifyConfig, k: u64, rng: &mut ChaCha8Rng) -> kronrad::Result<Outcome> {
    let mut o = Outcome::default();
    let n_max = cfg.n_max.max(1);
    match suite {
        Suite::P3 => {
            let (n, m) = (dim(rng, 1, n_max), dim(rng, 1, 3));
            let a: CMatrix = random_complex(rng, n, n);
            let b: CMatrix = random_complex(rng, m, m);
            o.report(p3_chain(&a, &b)?);
            o.report(e14_chain(&a, &b)?);
        }
        Suite::Th4 => {
            let (n, m) = (dim(rng, 1, n_max), dim(rng, 1, 3));
            let a: CMatrix = random_real(rng, n, n, 0.0, 1.0);
            let b: CMatrix = random_complex(rng, m, m);
            o.report(th4_chain(&a, &b)?);
            o.report(refined_bounds(&a, &b)?);
        }
        Suite::Cor1 => {
            let (n, m) = (dim(rng, 1, n_max), dim(rng, 1, 3));
            let a = positive(rng, n);
            let h = random_complex::<f64, _>(rng, m, m).hermitian_part();
            let g: CMatrix = random_complex(rng, m, m);
            let forward = cor1_equality_check(&a, &h, cfg.tol)?;
            o.check("hermitian_b_is_radial", forward.forward_applicable);
            o.check("forward", forward.forward_ok);
            o.check("converse", cor1_equality_check(&a, &g, cfg.tol)?.converse_ok);
            let mut r = BoundReport::new(&a, &h);
            r.push("w_AxB", forward.w_axb, "numerical radius sweep");
            r.push("wA_normB", forward.holbrook, "Holbrook bound");
            r.eq("w_AxB", "wA_normB");
            o.report(r);
        }
        Suite::Thm41 => {
            let (n, m) = (dim(rng, 1, n_max), dim(rng, 1, 3));
            let p = pick(&cfg.p_set, k);
            let a: CMatrix = random_complex(rng, n, n);
            let b: CMatrix = random_complex(rng, m, m);
            let pb = kron_pnorm_bounds(&a, &b, p)?;
            let mut r = BoundReport::new(&a, &b);
            r.push("lower", pb.lower, "l_p Kronecker lower estimate");
            r.push("upper", pb.upper, "row and column sum interpolation");
            r.le("lower", "upper");
            if let Some(e) = pb.exact {
                r.push("exact", e, "exact l_p norm");
                r.le("lower", "exact");
                r.le("exact", "upper");
            }
            o.report(r);
        }
        Suite::Copnorm => {
            let scale = pick(&[0.5, 1.0, 3.0], k);
            let p = pick(&cfg.p_set, k / 3);
            let (n, m) = (dim(rng, 2, n_max), dim(rng, 1, 3));
            let a: CMatrix = random_doubly_stochastic(rng, n, scale, 3);
            let b: CMatrix = random_complex(rng, m, m);
            let pb = kron_pnorm_bounds(&a, &b, p)?;
            let mut r = BoundReport::new(&a, &b);
            r.push("lower", pb.lower, "l_p Kronecker lower estimate");
            r.push("upper", pb.upper, "row and column sum interpolation");
            r.push("k_normB", scale * spectral_norm(&b)?, "scaled doubly stochastic collapse");
            r.push("w_AxB", w(&kron(&a, &b)?)?, "numerical radius sweep");
            r.push("k_wB", scale * w(&b)?, "scaled doubly stochastic collapse");
            r.eq("lower", "k_normB");
            r.eq("upper", "k_normB");
            r.eq("w_AxB", "k_wB");
            o.report(r);
        }
        Suite::Thm42 => {
            let (a, b) = (scalar(rng), scalar(rng));
            let (n, m) = (dim(rng, 2, 8), dim(rng, 1, 3));
            let bm: CMatrix = random_complex(rng, m, m);
            let circ = circ_minus_a_b(a, b, n)?;
            let prod = kron(&circ, &bm)?;
            let (closed_norm, closed_w) = circ_norm2_closed(a, b, n, &bm)?;
            let mut r = BoundReport::new(&circ, &bm);
            r.push("closed_norm", closed_norm, "circulant Circ(-a, b, ..., b) closed form");
            r.push("svd_norm", spectral_norm(&prod)?, "singular value decomposition");
            r.push("gram_norm", gram_equicorrelated_norm(&circ, &bm)?, "equicorrelated Gram closed form");
            r.push("closed_w", closed_w, "circulant Circ(-a, b, ..., b) closed form");
            r.push("sweep_w", w(&prod)?, "numerical radius sweep");
            r.eq("closed_norm", "svd_norm");
            r.eq("gram_norm", "svd_norm");
            r.eq("closed_w", "sweep_w");
            let (ar, br) = (rng.random_range(0.0..1.0), rng.random_range(0.0..1.0));
            let real = circ_minus_a_b(C64::new(ar, 0.0), C64::new(br, 0.0), n)?;
            r.push("cases_norm", circ_norm2_nonneg_cases(ar, br, n), "nonnegative case split");
            r.push("svd_real_norm", spectral_norm(&real)?, "singular value decomposition");
            r.eq("cases_norm", "svd_real_norm");
            let t: [f64; 3] = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
            let c3 = circulant(&t.map(|x| C64::new(x, 0.0)))?;
            r.push("circ3_norm", circ3_real_norm2(t[0], t[1], t[2], &bm)?, "three-point circulant closed form");
            r.push("svd_circ3_norm", spectral_norm(&kron(&c3, &bm)?)?, "singular value decomposition");
            r.eq("circ3_norm", "svd_circ3_norm");
            o.report(r);
        }
        Suite::Tfinal => {
            let (a, b) = (scalar(rng), scalar(rng));
            let (n, m) = (dim(rng, 2, 8), dim(rng, 1, 3));
            let p = pick(&cfg.p_set, k);
            let bm: CMatrix = random_complex(rng, m, m);
            let circ = circ_minus_a_b(a, b, n)?;
            let (lo, up) = tfinal_bounds(a, b, n, &bm)?;
            let pb = kron_pnorm_bounds(&circ, &bm, p)?;
            let mut r = BoundReport::new(&circ, &bm);
            r.push("circ_lower", lo, "circulant l_p bracket");
            r.push("circ_upper", up, "circulant l_p bracket");
            r.push("est_lower", pb.lower, "l_p Kronecker lower estimate");
            r.push("interp_upper", pb.upper, "row and column sum interpolation");
            r.le("circ_lower", "circ_upper");
            r.le("est_lower", "circ_upper");
            r.le("circ_lower", "interp_upper");
            if let Some(e) = pb.exact {
                r.push("exact", e, "exact l_p norm");
                r.le("circ_lower", "exact");
                r.le("exact", "circ_upper");
            }
            o.report(r);
        }
        Suite::Semihilbert => {
            let n = dim(rng, 2, n_max.max(3));
            let rank = if k % 2 == 0 { n - 1 } else { n.saturating_sub(2).max(1) };
            let ps = PSpace::new(&random_p::<f64, _>(rng, n, rank))?;
            let b = ps.random_adjointable(rng);
            let b2 = ps.random_adjointable(rng);
            let na = dim(rng, 1, 3);
            let a: CMatrix = if k % 4 < 2 { random_real(rng, na, na, 0.0, 1.0) } else { random_complex(rng, na, na) };
            o.check("intertwining", ps.intertwining_residual(&b)? <= 1e-9);
            let (m1, m2) = (ps.reduced_matrix(&b)?, ps.reduced_matrix(&b2)?);
            let prod = ps.reduced_matrix(&(&b * &b2))?;
            o.check("homomorphism", prod.max_abs_diff(&(&m1 * &m2)) <= 1e-9);
            let c1 = p_cor1_equality_check(&ps, &positive(rng, na), &b, cfg.tol)?;
            o.check("converse", c1.converse_ok);
            o.report(p_kron_suite(&ps, &a, &b)?);
        }
        Suite::Schur => {
            let n = dim(rng, 1, n_max);
            let m = 1 + (k as usize % cfg.m_max.max(1));
            let a: CMatrix = random_complex(rng, n, n);
            let b: CMatrix = random_complex(rng, n, n);
            o.report(schur_radius_chain(&a, &b)?);
            o.report(th10_chain(&a, m)?);
            o.check("one_way_equality", cor2_check(&positive(rng, n), &b, cfg.tol)?.ok);
        }
        Suite::Tref => {
            let n = dim(rng, 1, n_max.min(3));
            let m = 1 + (k as usize % cfg.m_max.max(1));
            let a: CMatrix = if k % 2 == 0 {
                let profile = RadialProfile::random(rng, n);
                radial_generator(rng, n, profile)
            } else {
                random_complex(rng, n, n)
            };
            let v = tref_check(&a, m, cfg.tol)?;
            o.check("consistent", v.consistent());
            o.check("downward_closed", v.downward_closed());
            o.check("matches_direct", v.witness.is_some() == tref_direct(&a, m, cfg.tol)?);
            o.report(th10_chain(&a, m)?);
        }
        Suite::Tforallm => {
            let n = dim(rng, 1, n_max);
            let m_max = cfg.m_max.max(1);
            let a: CMatrix = match k % 3 {
                0 => {
                    let profile = RadialProfile::random(rng, n);
                    radial_generator(rng, n, profile)
                }
                1 => {
                    let u: CMatrix = random_complex(rng, n, 1);
                    let v: CMatrix = random_complex(rng, 1, n);
                    &u * &v
                }
                _ => {
                    let n_dp = dim(rng, 1, n);
                    dp_plus_t(rng, n_dp, n - n_dp, 0.9)
                }
            };
            let scan = tforallm_scan(&a, m_max, cfg.tol)?;
            if let Some(r1) = &scan.rank_one {
                o.check("rank_one_characterization", r1.agrees);
            }
            if k % 3 == 2 {
                o.check("dp_plus_t_member", scan.member);
            }
            o.report(th10_chain(&a, m_max)?);
        }
        Suite::Polyroots => {
            let deg = dim(rng, 2, 12);
            let coeffs = (0..deg)
                .map(|_| {
                    let re: f64 = StandardNormal.sample(rng);
                    let im: f64 = StandardNormal.sample(rng);
                    C64::new(re, im)
                })
                .collect();
            let p = CPoly::new(coeffs)?;
            let rep = root_bound_report(&p)?;
            let (ws, wd) = est_poly_decomposition(&p)?;
            let cm = companion(&p);
            let mut r = BoundReport::new(&cm, &cm);
            r.push("max_root_modulus", rep.max_root_modulus, "companion eigenvalues");
            r.push("fujii_kubo", rep.fujii_kubo, "Fujii-Kubo root bound");
            r.push("est_poly", rep.est_poly, "circulant-split companion bound");
            r.push("w_shift_plus_w_D", ws + wd, "numerical radius sweep");
            r.le("max_root_modulus", "fujii_kubo");
            r.le("max_root_modulus", "est_poly");
            r.eq("w_shift_plus_w_D", "est_poly");
            o.report(r);
        }
        Suite::HouDu => {
            let g = dim(rng, 2, 3);
            let (br, bc) = (dim(rng, 1, 2), dim(rng, 1, 2));
            let blocks: Vec<Vec<CMatrix>> = (0..g)
                .map(|_| (0..g).map(|_| random_complex(rng, br, bc)).collect())
                .collect();
            let (lhs, rhs) = hou_du_gap(&blocks)?;
            let assembled = CMatrix::from_blocks(&blocks)?;
            let mut r = BoundReport::new(&assembled, &blocks[0][0]);
            r.push("norm_blocks", lhs, "block norm comparison");
            r.push("norm_of_block_norms", rhs, "block norm comparison");
            r.le("norm_blocks", "norm_of_block_norms");
            o.report(r);
        }
        Suite::P2x2 => {
            let n = dim(rng, 1, 7);
            let lams: Vec<C64> = (0..n).map(|_| scalar(rng)).collect();
            let a = anti_diagonal(&lams)?;
            let mut r = BoundReport::new(&a, &a);
            r.push("w_sweep", w(&a)?, "numerical radius sweep");
            r.push("closed_form", radius_antidiagonal(&lams), "anti-diagonal closed form");
            r.eq("w_sweep", "closed_form");
            o.report(r);
        }
    }
    Ok(o)
}

/// Totals over a `verify` run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VerifySummary {
    pub trials: u64,
    pub passed: u64,
    pub violations: u64,
    pub numerical_failures: u64,
    pub other_failures: u64,
}

fn fmt_exponents(ps: &[Exponent]) -> String {
    ps.iter().map(Exponent::to_string).collect::<Vec<_>>().join(",")
}

/// Runs every selected suite, writing a header per suite, one JSON record per
/// trial in trial order, and a summary line per suite.
pub fn verify(cfg: &VerifyConfig, out: &mut dyn Write) -> io::Result<VerifySummary> {
    writeln!(
        out,
        "# verify | seed {} | trials {} | n_max {} | m_max {} | p_set {} | tol {:e}",
        cfg.seed,
        cfg.trials,
        cfg.n_max,
        cfg.m_max,
        fmt_exponents(&cfg.p_set),
        cfg.tol
    )?;
    let mut total = VerifySummary::default();
    for &suite in &cfg.suites {
        render::header(out, &format!("suite {suite}"), suite.anchors())?;
        let records: Vec<TrialRecord> = (0..cfg.trials).into_par_iter().map(|k| run_trial(suite, cfg, k)).collect();
        let mut s = VerifySummary::default();
        let mut worst = f64::INFINITY;
        for rec in &records {
            writeln!(out, "{}", serde_json::to_string(rec).map_err(io::Error::other)?)?;
            s.trials += 1;
            if rec.ok {
                s.passed += 1;
            } else if let Some(e) = &rec.error {
                if e.numerical {
                    s.numerical_failures += 1;
                } else {
                    s.other_failures += 1;
                }
            } else {
                s.violations += 1;
            }
            if let Some(x) = rec.min_slack {
                worst = worst.min(x);
            }
        }
        let worst = if worst.is_finite() { format!("{worst:.3e}") } else { "none".into() };
        writeln!(
            out,
            "# summary {suite}: {}/{} passed | violations {} | errors {} | min slack {worst}",
            s.passed,
            s.trials,
            s.violations,
            s.numerical_failures + s.other_failures
        )?;
        total.trials += s.trials;
        total.passed += s.passed;
        total.violations += s.violations;
        total.numerical_failures += s.numerical_failures;
        total.other_failures += s.other_failures;
    }
    writeln!(out, "# total: {}/{} passed", total.passed, total.trials)?;
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
            assert!(!s.anchors().is_empty());
        }
        assert!("th5".parse::<Suite>().is_err());
    }

    #[test]
    fn every_suite_passes_a_few_trials() {
        let cfg = VerifyConfig {
            trials: 6,
            ..VerifyConfig::default()
        };
        for s in Suite::ALL {
            for k in 0..cfg.trials {
                let rec = run_trial(s, &cfg, k);
                assert!(rec.ok, "{}", serde_json::to_string(&rec).unwrap());
            }
        }
    }

    #[test]
    fn trials_replay() {
        let cfg = VerifyConfig::default();
        let a = serde_json::to_string(&run_trial(Suite::Th4, &cfg, 3)).unwrap();
        let b = serde_json::to_string(&run_trial(Suite::Th4, &cfg, 3)).unwrap();
        assert_eq!(a, b);
    }
}
