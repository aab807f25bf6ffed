//! Experiment orchestration behind the `equicap` binary: configuration
//! types that round-trip through JSON, representation/architecture spec
//! parsing, the sweep runner, and the figure-panel data generator.
//!
//! Exit-code contract: 0 success, 1 runtime failure (solver undecided,
//! failed suite, I/O), 2 configuration error. All randomness flows from an
//! explicit seed that is always recorded in the output, auto-generated when
//! not supplied.

use anyhow::{anyhow, bail, Context, Result};
use equicap::cover::{cover_count, cover_fraction};
use equicap::gcnn::{Arch, Boundary, ConvCapacityProblem, ConvLayer, Nonlinearity};
use equicap::group::FiniteGroup;
use equicap::rep::Representation;
use equicap::sep::{
    empirical_fraction, pool_estimates, CapacityEstimate, OrbitReduction, Probe, RepProblem,
    SepError,
};
use equicap::verify::{run_all, run_suite, SuiteReport};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Everything a run needs, in one JSON-serializable value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum ExperimentConfig {
    Cover {
        p: usize,
        n: usize,
        #[serde(default)]
        exact: bool,
        #[serde(default)]
        count: bool,
    },
    Fraction {
        rep: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        group: Option<PathBuf>,
        p: usize,
        trials: usize,
        seed: u64,
        #[serde(default)]
        raw_orbits: bool,
        probe: ProbeKind,
    },
    GcnnSweep {
        arch: String,
        p: usize,
        channels: Vec<usize>,
        trials: usize,
        seed: u64,
        input_seeds: usize,
        out: PathBuf,
        #[serde(default)]
        allow_non_coprime: bool,
        probe: ProbeKind,
    },
    Verify {
        suite: String,
        seed: u64,
    },
    Figure1Data {
        seed: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ProbeKind {
    /// Exact feasibility decision (witness or certificate).
    Lp,
    /// Logistic-regression protocol probe.
    Logistic,
}

impl From<ProbeKind> for Probe {
    fn from(value: ProbeKind) -> Probe {
        match value {
            ProbeKind::Lp => Probe::Feasibility,
            ProbeKind::Logistic => Probe::Logistic,
        }
    }
}

/// One sweep row; `alpha = p / n0` and `theory_fraction` is the counting
/// formula at (p, n0), both enforced at construction.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurvePoint {
    pub channels: usize,
    pub n0: usize,
    pub alpha: f64,
    pub fraction: f64,
    pub wilson_lo: f64,
    pub wilson_hi: f64,
    pub theory_fraction: f64,
}

impl CurvePoint {
    fn from_estimate(channels: usize, p: usize, est: &CapacityEstimate) -> CurvePoint {
        CurvePoint {
            channels,
            n0: est.n0,
            alpha: p as f64 / est.n0 as f64,
            fraction: est.fraction,
            wilson_lo: est.wilson_ci_95.0,
            wilson_hi: est.wilson_ci_95.1,
            theory_fraction: cover_fraction(p, est.n0).to_f64(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveMetadata {
    pub config: ExperimentConfig,
    pub wall_time_s: f64,
    pub version: String,
    pub timestamp_unix_s: u64,
}

/// A full sweep result: points plus run metadata. The CSV artifact carries
/// only the points (byte-identical across reruns of the same config+seed);
/// wall time and timestamp live in the metadata JSON.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CapacityCurve {
    pub points: Vec<CurvePoint>,
    pub metadata: CurveMetadata,
}

pub const CSV_HEADER: &str = "channels,n0,alpha,fraction,wilson_lo,wilson_hi,theory_fraction";

impl CapacityCurve {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for p in &self.points {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                p.channels, p.n0, p.alpha, p.fraction, p.wilson_lo, p.wilson_hi, p.theory_fraction
            ));
        }
        out
    }
}

/// Built-in representation specs, or a JSON file (optionally with a group
/// JSON alongside).
///
/// Built-ins: `regular:m`, `rotation:m`, `dsum:m1,m2`,
/// `regular-augmented:m,k`, `rotation-augmented:m,k`, `regular-sum:m,c`.
pub fn parse_rep_spec(spec: &str, group_path: Option<&Path>) -> Result<Representation> {
    let parse_args = |s: &str, want: usize| -> Result<Vec<usize>> {
        let args: Vec<usize> = s
            .split(',')
            .map(|a| a.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .with_context(|| format!("bad numeric arguments in rep spec '{spec}'"))?;
        if args.len() != want {
            bail!("rep spec '{spec}' needs {want} argument(s)");
        }
        Ok(args)
    };
    if let Some((name, rest)) = spec.split_once(':') {
        match name {
            "regular" => {
                let m = parse_args(rest, 1)?[0];
                return Ok(Representation::regular(&FiniteGroup::cyclic(m)?));
            }
            "rotation" => {
                let m = parse_args(rest, 1)?[0];
                return Ok(Representation::rotation(m)?);
            }
            "dsum" => {
                let a = parse_args(rest, 2)?;
                return Ok(Representation::dsum_regular(a[0], a[1])?);
            }
            "regular-augmented" => {
                let a = parse_args(rest, 2)?;
                let reg = Representation::regular(&FiniteGroup::cyclic(a[0])?);
                return Ok(reg.augment_trivial(a[1]));
            }
            "rotation-augmented" => {
                let a = parse_args(rest, 2)?;
                return Ok(Representation::rotation(a[0])?.augment_trivial(a[1]));
            }
            "regular-sum" => {
                let a = parse_args(rest, 2)?;
                let reg = Representation::regular(&FiniteGroup::cyclic(a[0])?);
                return Ok(Representation::sum_copies(&reg, a[1])?);
            }
            _ => {}
        }
    }
    // Treat as a JSON file path.
    let text = std::fs::read_to_string(spec)
        .with_context(|| format!("'{spec}' is not a built-in rep spec or a readable file"))?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    let group = if let Some(embedded) = value.get("group") {
        FiniteGroup::from_json(embedded)?
    } else if let Some(path) = group_path {
        let gtext = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read group JSON {}", path.display()))?;
        FiniteGroup::from_json(&serde_json::from_str(&gtext)?)?
    } else {
        bail!("rep JSON has no embedded \"group\"; pass --group <file>");
    };
    Ok(Representation::from_json(group, &value)?)
}

/// Architecture spec for sweeps: `conv`, `conv-maxpool`, `conv-avgpool`,
/// or `dsum:m1,m2`.
pub fn parse_arch_spec(spec: &str, allow_non_coprime: bool) -> Result<Arch> {
    match spec {
        "conv" => Ok(Arch::Conv),
        "conv-maxpool" => Ok(Arch::ConvMaxPool { k: 2 }),
        "conv-avgpool" => Ok(Arch::ConvAvgPool { k: 2 }),
        _ => {
            if let Some(rest) = spec.strip_prefix("dsum:") {
                let parts: Vec<usize> = rest
                    .split(',')
                    .map(|a| a.trim().parse::<usize>())
                    .collect::<Result<_, _>>()
                    .with_context(|| format!("bad dsum periods in '{spec}'"))?;
                if parts.len() != 2 {
                    bail!("dsum arch needs exactly two periods, e.g. dsum:10,8");
                }
                let (m1, m2) = (parts[0], parts[1]);
                if m1 == 0 || m2 == 0 {
                    bail!("dsum periods must be at least 1");
                }
                if gcd(m1, m2) != 1 && !allow_non_coprime {
                    bail!(
                        "dsum periods {m1} and {m2} share a factor; \
                         pass --allow-non-coprime to proceed"
                    );
                }
                Ok(Arch::DirectSum {
                    m1,
                    m2,
                    allow_non_coprime,
                })
            } else {
                bail!("unknown arch '{spec}' (conv, conv-maxpool, conv-avgpool, dsum:m1,m2)")
            }
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Derive independent sub-seeds for weights and inputs of replicate `idx`.
pub fn replicate_seeds(seed: u64, idx: u64) -> (u64, u64) {
    let w = seed
        .wrapping_mul(0x9e37_79b9_7f4a_7c15)
        .wrapping_add(idx.wrapping_mul(2) + 1);
    let i = seed
        .wrapping_mul(0xbf58_476d_1ce4_e5b9)
        .wrapping_add(idx.wrapping_mul(2) + 2);
    (w, i)
}

/// Build the capacity problem for a sweep architecture at full channel
/// count. Inputs follow the reference protocol: 10×10 spatial, 3 channels,
/// 10×10 filters for convolutions; (m1·m2)² spatial for the direct sum.
pub fn build_problem(arch: Arch, max_channels: usize, weight_seed: u64) -> ConvCapacityProblem {
    match arch {
        Arch::DirectSum { m1, m2, .. } => {
            let m = m1 * m2;
            let layer = ConvLayer::random(
                max_channels,
                10,
                10,
                3,
                Boundary::Periodic,
                Nonlinearity::Identity,
                weight_seed,
            );
            ConvCapacityProblem::new(layer, arch, m, m, 3)
        }
        _ => {
            let layer = ConvLayer::random(
                max_channels,
                10,
                10,
                3,
                Boundary::Periodic,
                Nonlinearity::Relu,
                weight_seed,
            );
            ConvCapacityProblem::new(layer, arch, 10, 10, 3)
        }
    }
}

/// Run a channel sweep, pooling trial counts across `input_seeds`
/// weight/input replicates per channel count.
pub fn run_sweep(
    arch: Arch,
    p: usize,
    channels: &[usize],
    trials: usize,
    seed: u64,
    input_seeds: usize,
    probe: Probe,
) -> Result<Vec<CurvePoint>, SepError> {
    let max_channels = *channels.iter().max().expect("channel list is non-empty");
    let mut per_channel: Vec<Vec<CapacityEstimate>> = vec![Vec::new(); channels.len()];
    for idx in 0..input_seeds {
        let (weight_seed, input_seed) = replicate_seeds(seed, idx as u64);
        let base = build_problem(arch, max_channels, weight_seed);
        for (ci, &n) in channels.iter().enumerate() {
            let problem = base.with_channels(n);
            let est = empirical_fraction(&problem, p, trials, input_seed, probe)?;
            per_channel[ci].push(est);
        }
    }
    Ok(channels
        .iter()
        .zip(per_channel.iter())
        .map(|(&n, ests)| CurvePoint::from_estimate(n, p, &pool_estimates(ests)))
        .collect())
}

/// JSON payload of the three orbit-geometry panels: a planar rotation orbit
/// (no fixed directions), the same with one appended fixed direction, and a
/// cyclic-shift orbit with the all-ones fixed direction.
pub fn figure1_data(seed: u64) -> Result<serde_json::Value> {
    #[derive(Serialize)]
    struct Orbit {
        anchor: Vec<f64>,
        label: i8,
        points: Vec<Vec<f64>>,
        centroid: Vec<f64>,
    }
    #[derive(Serialize)]
    struct Panel {
        panel: String,
        representation: String,
        dim: usize,
        fixed_subspace_dim: usize,
        fixed_subspace_basis: Vec<Vec<f64>>,
        orbits: Vec<Orbit>,
    }

    let panels_spec: Vec<(&str, Representation, Vec<Vec<f64>>)> = vec![
        ("a", Representation::rotation(4)?, vec![]),
        (
            "b",
            Representation::rotation(4)?.augment_trivial(1),
            vec![vec![0.0, 0.0, 1.0]],
        ),
        (
            "c",
            Representation::regular(&FiniteGroup::cyclic(3)?),
            vec![vec![1.0, 1.0, 1.0]],
        ),
    ];
    let mut panels = Vec::new();
    for (name, rep, basis) in panels_spec {
        let rep = Arc::new(rep);
        let orbits = equicap::sep::sample_orbit_instance(&rep, 2, seed);
        let avg = rep.group_average();
        let n0 = rep.fixed_subspace_dim()?;
        let panel_orbits = orbits
            .anchors()
            .iter()
            .zip([1i8, -1])
            .map(|(anchor, label)| {
                let points = rep
                    .group()
                    .elements()
                    .map(|g| rep.matrix(g).dot(anchor).to_vec())
                    .collect();
                Orbit {
                    anchor: anchor.to_vec(),
                    label,
                    points,
                    centroid: avg.dot(anchor).to_vec(),
                }
            })
            .collect();
        panels.push(Panel {
            panel: name.to_string(),
            representation: rep.label().to_string(),
            dim: rep.dim(),
            fixed_subspace_dim: n0,
            fixed_subspace_basis: basis,
            orbits: panel_orbits,
        });
    }
    Ok(serde_json::json!({
        "seed": seed,
        "version": VERSION,
        "panels": panels,
    }))
}

/// Outcome of a run, carrying what should be printed and the exit code.
pub struct RunOutcome {
    pub stdout: String,
    pub exit_code: u8,
}

fn undecided_exit(err: &SepError) -> u8 {
    match err {
        SepError::Undecided { .. } => 1,
        _ => 2,
    }
}

/// Execute a configuration end to end, writing any artifact files.
pub fn run(config: ExperimentConfig) -> Result<RunOutcome> {
    let started = Instant::now();
    match config.clone() {
        ExperimentConfig::Cover { p, n, exact, count } => {
            if p < 1 {
                bail!("cover needs --p >= 1");
            }
            let line = if count {
                cover_count(p, n).to_string()
            } else if exact {
                cover_fraction(p, n).to_string()
            } else {
                format!("{}", cover_fraction(p, n).to_f64())
            };
            Ok(RunOutcome {
                stdout: format!("{line}\n"),
                exit_code: 0,
            })
        }
        ExperimentConfig::Fraction {
            rep,
            group,
            p,
            trials,
            seed,
            raw_orbits,
            probe,
        } => {
            let rep = parse_rep_spec(&rep, group.as_deref())?;
            let reduction = if raw_orbits {
                OrbitReduction::RawOrbits
            } else {
                OrbitReduction::Centroids
            };
            let problem = RepProblem::new(Arc::new(rep), reduction)?;
            match empirical_fraction(&problem, p, trials, seed, probe.into()) {
                Ok(est) => Ok(RunOutcome {
                    stdout: format!("{}\n", serde_json::to_string_pretty(&est)?),
                    exit_code: 0,
                }),
                Err(e) => {
                    eprintln!("estimate aborted: {e}");
                    Ok(RunOutcome {
                        stdout: String::new(),
                        exit_code: undecided_exit(&e),
                    })
                }
            }
        }
        ExperimentConfig::GcnnSweep {
            arch,
            p,
            channels,
            trials,
            seed,
            input_seeds,
            out,
            allow_non_coprime,
            probe,
        } => {
            if channels.is_empty() {
                bail!("gcnn-sweep needs a non-empty --channels list");
            }
            if input_seeds == 0 {
                bail!("gcnn-sweep needs --input-seeds >= 1");
            }
            let arch = parse_arch_spec(&arch, allow_non_coprime)?;
            match run_sweep(arch, p, &channels, trials, seed, input_seeds, probe.into()) {
                Ok(points) => {
                    check_curve_invariants(&points, p)?;
                    let curve = CapacityCurve {
                        points,
                        metadata: CurveMetadata {
                            config,
                            wall_time_s: started.elapsed().as_secs_f64(),
                            version: VERSION.to_string(),
                            timestamp_unix_s: std::time::SystemTime::now()
                                .duration_since(std::time::UNIX_EPOCH)
                                .map(|d| d.as_secs())
                                .unwrap_or(0),
                        },
                    };
                    std::fs::write(&out, curve.to_csv())
                        .with_context(|| format!("cannot write {}", out.display()))?;
                    let meta_path = out.with_extension("meta.json");
                    std::fs::write(&meta_path, serde_json::to_string_pretty(&curve.metadata)?)
                        .with_context(|| format!("cannot write {}", meta_path.display()))?;
                    Ok(RunOutcome {
                        stdout: format!(
                            "wrote {} ({} rows) and {}\n",
                            out.display(),
                            curve.points.len(),
                            meta_path.display()
                        ),
                        exit_code: 0,
                    })
                }
                Err(e) => {
                    eprintln!("sweep aborted: {e}");
                    Ok(RunOutcome {
                        stdout: String::new(),
                        exit_code: undecided_exit(&e),
                    })
                }
            }
        }
        ExperimentConfig::Verify { suite, seed } => {
            let reports: Vec<SuiteReport> = if suite == "all" {
                run_all(seed)
            } else {
                vec![run_suite(&suite, seed).ok_or_else(|| {
                    anyhow!(
                        "unknown suite '{suite}'; available: all, {}",
                        equicap::verify::SUITES.join(", ")
                    )
                })?]
            };
            let all_passed = reports.iter().all(|r| r.passed);
            for r in &reports {
                eprintln!(
                    "{} {} ({} cases): {}",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.suite,
                    r.cases,
                    r.detail
                );
            }
            Ok(RunOutcome {
                stdout: format!(
                    "{}\n",
                    serde_json::to_string_pretty(&serde_json::json!({
                        "seed": seed,
                        "passed": all_passed,
                        "suites": reports,
                    }))?
                ),
                exit_code: if all_passed { 0 } else { 1 },
            })
        }
        ExperimentConfig::Figure1Data { seed, out } => {
            let data = figure1_data(seed)?;
            let text = format!("{}\n", serde_json::to_string_pretty(&data)?);
            if let Some(path) = out {
                std::fs::write(&path, &text)
                    .with_context(|| format!("cannot write {}", path.display()))?;
                Ok(RunOutcome {
                    stdout: format!("wrote {}\n", path.display()),
                    exit_code: 0,
                })
            } else {
                Ok(RunOutcome {
                    stdout: text,
                    exit_code: 0,
                })
            }
        }
    }
}

/// Reusable hook for binaries and tests: optional thread cap from
/// EQUICAP_THREADS.
pub fn configure_threads() {
    if let Ok(raw) = std::env::var("EQUICAP_THREADS") {
        if let Ok(threads) = raw.parse::<usize>() {
            if threads >= 1 {
                // Ignore the error if a global pool already exists.
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
        }
    }
}

/// Validate a curve's internal consistency (used by tests and after reads).
pub fn check_curve_invariants(points: &[CurvePoint], p: usize) -> Result<()> {
    for point in points {
        let alpha = p as f64 / point.n0 as f64;
        if (point.alpha - alpha).abs() > 1e-12 {
            bail!("alpha mismatch at channels={}", point.channels);
        }
        let theory = cover_fraction(p, point.n0).to_f64();
        if (point.theory_fraction - theory).abs() > 1e-12 {
            bail!("theory mismatch at channels={}", point.channels);
        }
        if !(point.wilson_lo <= point.fraction && point.fraction <= point.wilson_hi) {
            bail!(
                "interval does not bracket fraction at channels={}",
                point.channels
            );
        }
    }
    Ok(())
}

// Checks for pieces the binary-level tests do not reach.
#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_json_round_trip() {
        let configs = vec![
            ExperimentConfig::Cover {
                p: 4,
                n: 2,
                exact: true,
                count: false,
            },
            ExperimentConfig::Fraction {
                rep: "regular:5".into(),
                group: None,
                p: 8,
                trials: 100,
                seed: 42,
                raw_orbits: false,
                probe: ProbeKind::Lp,
            },
            ExperimentConfig::GcnnSweep {
                arch: "dsum:10,8".into(),
                p: 16,
                channels: vec![2, 4, 6],
                trials: 100,
                seed: 7,
                input_seeds: 3,
                out: "results.csv".into(),
                allow_non_coprime: true,
                probe: ProbeKind::Lp,
            },
            ExperimentConfig::Verify {
                suite: "all".into(),
                seed: 3,
            },
            ExperimentConfig::Figure1Data { seed: 1, out: None },
        ];
        for config in configs {
            let json = serde_json::to_string(&config).unwrap();
            let back: ExperimentConfig = serde_json::from_str(&json).unwrap();
            assert_eq!(back, config);
        }
    }

    #[test]
    fn rep_specs_parse() {
        assert_eq!(parse_rep_spec("regular:5", None).unwrap().dim(), 5);
        assert_eq!(parse_rep_spec("rotation:8", None).unwrap().dim(), 2);
        assert_eq!(parse_rep_spec("dsum:2,3", None).unwrap().dim(), 5);
        assert_eq!(
            parse_rep_spec("regular-augmented:3,2", None).unwrap().dim(),
            5
        );
        assert_eq!(
            parse_rep_spec("rotation-augmented:4,1", None)
                .unwrap()
                .dim(),
            3
        );
        assert_eq!(parse_rep_spec("regular-sum:5,4", None).unwrap().dim(), 20);
        assert!(parse_rep_spec("nonsense:1", None).is_err());
        assert!(parse_rep_spec("/no/such/file.json", None).is_err());
    }

    #[test]
    fn rep_spec_from_json_file() {
        let dir = std::env::temp_dir().join(format!("equicap-repspec-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let rep = Representation::regular(&FiniteGroup::cyclic(4).unwrap());
        let mut value = rep.to_json();
        value["group"] = rep.group().to_json();
        let path = dir.join("rep.json");
        std::fs::write(&path, serde_json::to_string(&value).unwrap()).unwrap();
        let loaded = parse_rep_spec(path.to_str().unwrap(), None).unwrap();
        assert_eq!(loaded.dim(), 4);
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn arch_specs_parse() {
        assert_eq!(parse_arch_spec("conv", false).unwrap(), Arch::Conv);
        assert_eq!(
            parse_arch_spec("conv-maxpool", false).unwrap(),
            Arch::ConvMaxPool { k: 2 }
        );
        assert_eq!(
            parse_arch_spec("dsum:2,3", false).unwrap(),
            Arch::DirectSum {
                m1: 2,
                m2: 3,
                allow_non_coprime: false
            }
        );
        assert!(parse_arch_spec("dsum:2", false).is_err());
        assert!(parse_arch_spec("mlp", false).is_err());
    }

    #[test]
    fn cover_run_prints_expected_forms() {
        let run1 = run(ExperimentConfig::Cover {
            p: 4,
            n: 2,
            exact: true,
            count: false,
        })
        .unwrap();
        assert_eq!(run1.stdout.trim(), "1/2");
        let run2 = run(ExperimentConfig::Cover {
            p: 4,
            n: 2,
            exact: false,
            count: true,
        })
        .unwrap();
        assert_eq!(run2.stdout.trim(), "8");
        let run3 = run(ExperimentConfig::Cover {
            p: 4,
            n: 2,
            exact: false,
            count: false,
        })
        .unwrap();
        assert_eq!(run3.stdout.trim(), "0.5");
    }

    #[test]
    fn figure1_panels_have_expected_geometry() {
        let data = figure1_data(1).unwrap();
        let panels = data["panels"].as_array().unwrap();
        assert_eq!(panels.len(), 3);
        assert_eq!(panels[0]["fixed_subspace_dim"], 0);
        assert_eq!(panels[1]["fixed_subspace_dim"], 1);
        assert_eq!(panels[2]["fixed_subspace_dim"], 1);
        // Panel c centroids sit on the all-ones line.
        let orbit = &panels[2]["orbits"][0];
        let c = orbit["centroid"].as_array().unwrap();
        let c0 = c[0].as_f64().unwrap();
        for v in c {
            assert!((v.as_f64().unwrap() - c0).abs() < 1e-10);
        }
        // Panel a orbits have four points each (|Z_4|).
        assert_eq!(
            panels[0]["orbits"][0]["points"].as_array().unwrap().len(),
            4
        );
    }

    #[test]
    fn sweep_points_satisfy_invariants() {
        let points = run_sweep(Arch::Conv, 4, &[2, 3], 8, 123, 1, Probe::Feasibility).unwrap();
        check_curve_invariants(&points, 4).unwrap();
        assert_eq!(points.len(), 2);
        assert_eq!(points[0].channels, 2);
        assert_eq!(points[0].n0, 2);
    }

    #[test]
    fn replicate_seeds_differ() {
        let (w0, i0) = replicate_seeds(1, 0);
        let (w1, i1) = replicate_seeds(1, 1);
        assert_ne!(w0, w1);
        assert_ne!(i0, i1);
        assert_ne!(w0, i0);
    }
}
