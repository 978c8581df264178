//! Command-line front end: parses arguments, reads the JSON inputs,
//! dispatches to the library, and emits deterministic JSON reports.
//!
//! Exit codes: `0` success, `1` domain error (an analysis rejected its
//! input, for example an inadmissible Jordan block), `2` usage error
//! (unknown flags, out-of-range options, unreadable or malformed JSON).
//!
//! All reports print to stdout. With `--out` (or the `WHITNEY_OUT`
//! environment variable pointing at a directory) they are also written
//! to disk; `portrait` treats the output location as a directory and
//! writes per-trajectory CSV files plus a `manifest.json` there.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::convexity::{
    jordan_spec_from_matrix, kallin_construct, kallin_verify, symplectic_area, weinstock_decide,
    AreaDomain, ConvexityVerdict, JordanBlock, RealJordanSpec, DEFAULT_EIG_TOL,
};
use crate::foliation::{
    characteristic_field, extract_system_coefficients, jet_foliation, standard_umbrella_field,
    VectorField2,
};
use crate::json::{
    fmt_complex, fmt_f64, read_json_file, to_canonical_json, AnalyzeReportDto, AreaReportDto,
    ConvexityReportDto, FieldDto, HenonReportDto, HenonSpecDto, JordanSpecDto,
    KallinCertificateDto, MatrixDto, MultiplicityReportDto, PolyMapDto, PortraitManifestDto,
};
use crate::local_algebra::{multiplicity, DEFAULT_K_MAX};
use crate::poly::{rat, ratq};
use crate::portrait::{phase_portrait_grid, Terminated, DEFAULT_TOL};
use crate::symplectic::{henon_inverse, henon_map};

#[derive(Parser, Debug)]
#[command(
    name = "whitney",
    version,
    about = "Characteristic foliations of open Whitney umbrellas, determinacy \
             invariants, and polynomial-convexity certificates"
)]
struct Cli {
    /// JSON file supplying defaults for omitted numeric options.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Seed for the randomized self-test batch.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output file (directory for `portrait`); also honors WHITNEY_OUT.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Characteristic field of a polynomial symplectomorphism of R^4.
    AnalyzeMap {
        /// Polynomial map JSON (source_dim 4, target_dim 4).
        #[arg(long, value_name = "FILE")]
        map: PathBuf,
        /// Compute through truncated jets of this order instead of exactly.
        #[arg(long, value_name = "K")]
        jet_order: Option<u32>,
    },
    /// Certified algebraic multiplicity of a planar vector field.
    Determinacy {
        /// Field JSON with `alpha` and `beta` polynomials in (t, s).
        #[arg(long, value_name = "FILE")]
        field: PathBuf,
        /// Largest jet order to try (at least 2).
        #[arg(long, value_name = "K")]
        kmax: Option<u32>,
    },
    /// Polynomial-convexity decision for the plane pair (R^n, (A+iI)R^n).
    Convexity {
        /// Matrix JSON: row-major rational strings.
        #[arg(long, value_name = "FILE")]
        matrix: PathBuf,
        /// Real Jordan model of the matrix; derived numerically if omitted.
        #[arg(long, value_name = "FILE")]
        jordan: Option<PathBuf>,
        /// Relative tolerance for the eigenvalue screen.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Build a Henon-family symplectomorphism and its exact inverse.
    Henon {
        /// Spec JSON with potential `V`, shift `eta`, and factor count `N`.
        #[arg(long, value_name = "FILE")]
        spec: PathBuf,
    },
    /// Integrate a grid of trajectories and write CSV plot data.
    Portrait {
        /// Field JSON with `alpha` and `beta` polynomials in (t, s).
        #[arg(long, value_name = "FILE")]
        field: PathBuf,
        /// Half-width of the integration box.
        #[arg(long = "box", value_name = "B")]
        box_size: Option<f64>,
        /// Number of grid seeds.
        #[arg(long, value_name = "N")]
        seeds: Option<usize>,
    },
    /// Symplectic area of a holomorphic polynomial curve, both routes.
    Area {
        /// Curve JSON: a polynomial map from (xi, eta) to R^{2n}.
        #[arg(long, value_name = "FILE")]
        curve: PathBuf,
        /// Disc domain of this radius.
        #[arg(long, value_name = "R")]
        radius: Option<f64>,
        /// Annulus inner radius (needs --outer).
        #[arg(long, value_name = "R")]
        inner: Option<f64>,
        /// Annulus outer radius (needs --inner).
        #[arg(long, value_name = "R")]
        outer: Option<f64>,
        /// Radial quadrature points.
        #[arg(long, value_name = "N")]
        quad: Option<usize>,
    },
    /// Run the embedded golden checks; exit 0 exactly when all pass.
    Selftest,
}

/// Config-file mirror of the numeric options; flags win over the file.
#[derive(Deserialize, Default, Debug)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    #[serde(rename = "jet-order")]
    jet_order: Option<u32>,
    kmax: Option<u32>,
    tol: Option<f64>,
    #[serde(rename = "box")]
    box_size: Option<f64>,
    seeds: Option<usize>,
    quad: Option<usize>,
    seed: Option<u64>,
}

enum CliError {
    /// Bad invocation or unreadable/malformed input: exit 2.
    Usage(String),
    /// Structurally valid input rejected by an analysis: exit 1.
    Domain(String),
}

impl From<crate::json::JsonError> for CliError {
    fn from(e: crate::json::JsonError) -> Self {
        match e {
            crate::json::JsonError::Io { .. } | crate::json::JsonError::Parse { .. } => {
                CliError::Usage(e.to_string())
            }
            crate::json::JsonError::Schema { .. } => CliError::Domain(e.to_string()),
        }
    }
}

fn domain<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Domain(e.to_string())
}

/// Parses `argv` and runs one subcommand, returning the process exit
/// code. The first element of `argv` is the program name.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    let config: ConfigFile = match &cli.config {
        Some(path) => read_json_file(path).map_err(|e| CliError::Usage(e.to_string()))?,
        None => ConfigFile::default(),
    };
    let out = cli.out.clone().or_else(|| {
        std::env::var_os("WHITNEY_OUT").map(|d| {
            let dir = PathBuf::from(d);
            match &cli.command {
                Command::Portrait { .. } => dir,
                Command::AnalyzeMap { .. } => dir.join("analyze-map.json"),
                Command::Determinacy { .. } => dir.join("determinacy.json"),
                Command::Convexity { .. } => dir.join("convexity.json"),
                Command::Henon { .. } => dir.join("henon.json"),
                Command::Area { .. } => dir.join("area.json"),
                Command::Selftest => dir.join("selftest.json"),
            }
        })
    });

    let report = match cli.command {
        Command::AnalyzeMap { map, jet_order } => {
            cmd_analyze_map(&map, jet_order.or(config.jet_order))?
        }
        Command::Determinacy { field, kmax } => {
            cmd_determinacy(&field, kmax.or(config.kmax))?
        }
        Command::Convexity {
            matrix,
            jordan,
            tol,
        } => cmd_convexity(&matrix, jordan.as_deref(), tol.or(config.tol))?,
        Command::Henon { spec } => cmd_henon(&spec)?,
        Command::Portrait {
            field,
            box_size,
            seeds,
        } => cmd_portrait(
            &field,
            box_size.or(config.box_size),
            seeds.or(config.seeds),
            out.as_deref(),
        )?,
        Command::Area {
            curve,
            radius,
            inner,
            outer,
            quad,
        } => cmd_area(&curve, radius, inner, outer, quad.or(config.quad))?,
        Command::Selftest => cmd_selftest(cli.seed.or(config.seed).unwrap_or(0))?,
    };

    print!("{report}");
    if let Some(path) = out {
        if !matches!(
            std::fs::metadata(&path).map(|m| m.is_dir()),
            Ok(true)
        ) {
            if let Some(parent) = path.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent)
                        .map_err(|e| CliError::Domain(format!("cannot create {parent:?}: {e}")))?;
                }
            }
            std::fs::write(&path, &report)
                .map_err(|e| CliError::Domain(format!("cannot write {path:?}: {e}")))?;
        }
    }
    Ok(())
}

fn cmd_analyze_map(map: &Path, jet_order: Option<u32>) -> Result<String, CliError> {
    let dto: PolyMapDto = read_json_file(map)?;
    let phi = dto.to_map("map")?;
    let field = match jet_order {
        Some(k) => {
            if k < 2 {
                return Err(CliError::Usage("--jet-order must be at least 2".into()));
            }
            let (a, b) = jet_foliation(&phi, k).map_err(domain)?;
            VectorField2::new(a.poly().clone(), b.poly().clone()).map_err(domain)?
        }
        None => characteristic_field(&phi).map_err(domain)?,
    };
    let extraction = extract_system_coefficients(&field).map_err(domain)?;
    Ok(to_canonical_json(&AnalyzeReportDto::new(
        &field,
        &extraction,
    )))
}

fn cmd_determinacy(field: &Path, kmax: Option<u32>) -> Result<String, CliError> {
    let dto: FieldDto = read_json_file(field)?;
    let field = dto.to_field("field")?;
    let kmax = kmax.unwrap_or(DEFAULT_K_MAX);
    if kmax < 2 {
        return Err(CliError::Usage("--kmax must be at least 2".into()));
    }
    let report = multiplicity(&field, kmax);
    Ok(to_canonical_json(&MultiplicityReportDto::from_report(
        &report,
    )))
}

fn cmd_convexity(
    matrix: &Path,
    jordan: Option<&Path>,
    tol: Option<f64>,
) -> Result<String, CliError> {
    let tol = tol.unwrap_or(DEFAULT_EIG_TOL);
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(CliError::Usage("--tol must be positive and finite".into()));
    }
    let dto: MatrixDto = read_json_file(matrix)?;
    let a = dto.to_matrix("matrix")?;
    let screen = weinstock_decide(&a, tol).map_err(domain)?;

    let spec: Option<RealJordanSpec> = if screen.verdict == ConvexityVerdict::Convex {
        match jordan {
            Some(path) => {
                let sdto: JordanSpecDto = read_json_file(path)?;
                Some(sdto.to_spec("jordan")?)
            }
            None => jordan_spec_from_matrix(&a, 1e-6).map_err(domain)?,
        }
    } else {
        None
    };
    let certificate = match spec {
        Some(spec) => {
            let cert = kallin_construct(&spec).map_err(domain)?;
            // The certificate speaks about the Jordan model; the model
            // must pass the independent verification and agree with the
            // input matrix up to similarity (exact characteristic
            // polynomial match; the model's eigenvalue structure is
            // already pinned by its blocks).
            let model = spec.matrix();
            let check = kallin_verify(&cert, &model).map_err(domain)?;
            if !check.valid || !check.matches_certificate {
                return Err(CliError::Domain(
                    "certificate failed verification against its Jordan model".into(),
                ));
            }
            if a != model && a.char_poly() != model.char_poly() {
                return Err(CliError::Domain(
                    "the Jordan model is not similar to the matrix: certificate rejected".into(),
                ));
            }
            Some(KallinCertificateDto::from_certificate(&cert))
        }
        None => None,
    };

    let verdict = match screen.verdict {
        ConvexityVerdict::Convex => "Convex",
        ConvexityVerdict::NotConvex => "NotConvex",
        ConvexityVerdict::BoundaryCase => "BoundaryCase",
    };
    Ok(to_canonical_json(&ConvexityReportDto {
        verdict: verdict.to_string(),
        witness: screen.witness.map(|(re, im)| fmt_complex(re, im)),
        eigenvalues: screen
            .eigenvalues
            .iter()
            .map(|&(re, im)| fmt_complex(re, im))
            .collect(),
        tol: fmt_f64(screen.tol),
        certificate,
    }))
}

fn cmd_henon(spec: &Path) -> Result<String, CliError> {
    let dto: HenonSpecDto = read_json_file(spec)?;
    let spec = dto.to_spec("spec")?;
    let h = henon_map(&spec).map_err(domain)?;
    let hinv = henon_inverse(&spec).map_err(domain)?;
    let cap = crate::poly::DEFAULT_TERM_CAP;
    let roundtrip = h
        .compose(&hinv, cap)
        .map_err(domain)?
        .is_identity()
        && hinv.compose(&h, cap).map_err(domain)?.is_identity();
    Ok(to_canonical_json(&HenonReportDto {
        map: PolyMapDto::from_map(&h),
        inverse: PolyMapDto::from_map(&hinv),
        degree: h.degree().unwrap_or(0),
        degree_bound: spec.degree_bound(),
        roundtrip_identity: roundtrip,
    }))
}

fn cmd_portrait(
    field: &Path,
    box_size: Option<f64>,
    seeds: Option<usize>,
    out: Option<&Path>,
) -> Result<String, CliError> {
    let dto: FieldDto = read_json_file(field)?;
    let field = dto.to_field("field")?;
    let box_size = box_size.unwrap_or(0.5);
    let seeds = seeds.unwrap_or(64);
    if !(box_size > 0.0 && box_size.is_finite()) {
        return Err(CliError::Usage("--box must be positive and finite".into()));
    }
    if seeds == 0 {
        return Err(CliError::Usage("--seeds must be at least 1".into()));
    }
    let dir = out.ok_or_else(|| {
        CliError::Usage("portrait needs --out DIR (or WHITNEY_OUT) for the CSV files".into())
    })?;
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::Domain(format!("cannot create {dir:?}: {e}")))?;

    let trajectories = phase_portrait_grid(&field, box_size, seeds);
    let mut files = Vec::with_capacity(trajectories.len());
    let mut terminations = Vec::with_capacity(trajectories.len());
    for (i, traj) in trajectories.iter().enumerate() {
        let name = format!("trajectory_{i:04}.csv");
        let mut csv = String::from("time,t,s\n");
        for &(tau, t, s) in &traj.points {
            csv.push_str(&format!("{tau},{t},{s}\n"));
        }
        std::fs::write(dir.join(&name), csv)
            .map_err(|e| CliError::Domain(format!("cannot write {name}: {e}")))?;
        terminations.push(
            match traj.terminated {
                Terminated::ReachedOrigin => "ReachedOrigin",
                Terminated::LeftBox => "LeftBox",
                Terminated::MaxSteps => "MaxSteps",
                Terminated::ReachedTEnd => "ReachedTEnd",
                Terminated::StepUnderflow => "StepUnderflow",
            }
            .to_string(),
        );
        files.push(name);
    }
    let manifest = to_canonical_json(&PortraitManifestDto {
        box_size: fmt_f64(box_size),
        seeds,
        tol: fmt_f64(DEFAULT_TOL),
        files,
        terminations,
    });
    std::fs::write(dir.join("manifest.json"), &manifest)
        .map_err(|e| CliError::Domain(format!("cannot write manifest.json: {e}")))?;
    Ok(manifest)
}

fn cmd_area(
    curve: &Path,
    radius: Option<f64>,
    inner: Option<f64>,
    outer: Option<f64>,
    quad: Option<usize>,
) -> Result<String, CliError> {
    let dto: PolyMapDto = read_json_file(curve)?;
    let h = dto.to_map("curve")?;
    let domain_spec = match (radius, inner, outer) {
        (Some(r), None, None) => AreaDomain::Disc { radius: r },
        (None, Some(a), Some(b)) => AreaDomain::Annulus { inner: a, outer: b },
        _ => {
            return Err(CliError::Usage(
                "give either --radius, or both --inner and --outer".into(),
            ))
        }
    };
    let quad = quad.unwrap_or(64);
    if quad == 0 {
        return Err(CliError::Usage("--quad must be at least 1".into()));
    }
    let report = symplectic_area(&h, &domain_spec, quad).map_err(domain)?;
    Ok(to_canonical_json(&AreaReportDto {
        area: fmt_f64(report.area),
        boundary_integral: fmt_f64(report.boundary_integral),
        difference: fmt_f64((report.area - report.boundary_integral).abs()),
    }))
}

/// One line per embedded check.
#[derive(Serialize, Deserialize, Debug)]
struct SelftestReport {
    golden_field: String,
    kallin_case1: String,
    kallin_additivity: String,
    random_certificates: String,
    seed: u64,
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic admissible Jordan model from the stream: a couple of
/// blocks with nonzero real eigenvalues, rotating pairs, or slow
/// imaginary pairs with |t| < 1.
fn random_admissible_spec(state: &mut u64) -> RealJordanSpec {
    let n_blocks = 1 + (splitmix64(state) % 2) as usize;
    let mut blocks = Vec::with_capacity(n_blocks);
    for _ in 0..n_blocks {
        let pick = splitmix64(state) % 3;
        blocks.push(match pick {
            0 => {
                let lambda = [-3i64, -1, 1, 2, 5][(splitmix64(state) % 5) as usize];
                let size = 1 + (splitmix64(state) % 2) as usize;
                JordanBlock::Real {
                    lambda: rat(lambda),
                    size,
                }
            }
            1 => JordanBlock::Complex {
                s: rat([-2i64, 1, 3][(splitmix64(state) % 3) as usize]),
                t: rat(1 + (splitmix64(state) % 3) as i64),
                pairs: 1 + (splitmix64(state) % 2) as usize,
            },
            _ => JordanBlock::Complex {
                s: rat(0),
                t: ratq(1, 2 + (splitmix64(state) % 3) as i64),
                pairs: 1,
            },
        });
    }
    RealJordanSpec::new(blocks).expect("generated blocks are structurally valid")
}

fn cmd_selftest(seed: u64) -> Result<String, CliError> {
    let golden_field = {
        let phi = crate::symplectic::PolyMap::identity(4, &crate::symplectic::R4_VARS);
        match characteristic_field(&phi) {
            Ok(f) if f == standard_umbrella_field() => "ok".to_string(),
            Ok(f) => format!("failed: got alpha = {}, beta = {}", f.alpha, f.beta),
            Err(e) => format!("failed: {e}"),
        }
    };

    let case1_spec = RealJordanSpec::new(vec![JordanBlock::Real {
        lambda: rat(1),
        size: 1,
    }])
    .expect("static spec");
    let kallin_case1 = check_certificate(&case1_spec);

    let additivity_spec = RealJordanSpec::new(vec![
        JordanBlock::Real {
            lambda: rat(1),
            size: 1,
        },
        JordanBlock::Real {
            lambda: rat(-1),
            size: 1,
        },
    ])
    .expect("static spec");
    let kallin_additivity = check_certificate(&additivity_spec);

    let mut state = seed ^ 0xA076_1D64_78BD_642F;
    let mut random_certificates = "ok".to_string();
    for i in 0..5 {
        let spec = random_admissible_spec(&mut state);
        let line = check_certificate(&spec);
        if line != "ok" {
            random_certificates = format!("failed at sample {i}: {line}");
            break;
        }
    }

    let all_ok = [&golden_field, &kallin_case1, &kallin_additivity, &random_certificates]
        .iter()
        .all(|s| s.as_str() == "ok");
    let report = to_canonical_json(&SelftestReport {
        golden_field,
        kallin_case1,
        kallin_additivity,
        random_certificates,
        seed,
    });
    if all_ok {
        Ok(report)
    } else {
        // Print the report before signalling failure so the caller sees
        // which check broke.
        print!("{report}");
        Err(CliError::Domain("selftest failed".into()))
    }
}

fn check_certificate(spec: &RealJordanSpec) -> String {
    use num::Zero;
    let cert = match kallin_construct(spec) {
        Ok(c) => c,
        Err(e) => return format!("failed: {e}"),
    };
    if cert.margin_l1 <= crate::poly::Rat::zero() || cert.margin_l2 <= crate::poly::Rat::zero() {
        return "failed: nonpositive margin".to_string();
    }
    match kallin_verify(&cert, &spec.matrix()) {
        Ok(v) if v.valid && v.matches_certificate => "ok".to_string(),
        Ok(_) => "failed: verification rejected the certificate".to_string(),
        Err(e) => format!("failed: {e}"),
    }
}
