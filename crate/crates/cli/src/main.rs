//! `revmap`: exact analysis of reversible maps built from a pair of linear
//! involutions. Subcommands wrap the library operations and emit
//! machine-readable JSON reports (or `--pretty` text); exit code 0 means
//! success, 1 a failed mathematical check or precondition, 2 malformed input.

mod pairdoc;
mod report;
mod svg;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use pairdoc::{matrix_strings, parse_point, vector_strings, LoadedPair};
use report::*;
use revmap_core as core;
use revmap_core::{CaseTag, EigenFrame, Family, InvolutionPair, Scalar, SubspaceBasis};

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Math(core::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "input error: {msg}"),
            CliError::Math(e) => write!(f, "check failed: {e}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Math(core::Error::Parse(_))
            | CliError::Math(core::Error::InvalidDiscriminant(_)) => 2,
            CliError::Math(_) => 1,
        }
    }
}

impl From<core::Error> for CliError {
    fn from(e: core::Error) -> Self {
        match e {
            core::Error::Parse(_) | core::Error::InvalidDiscriminant(_) => {
                CliError::Input(e.to_string())
            }
            other => CliError::Math(other),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "revmap",
    about = "Exact analysis of reversible maps F = phi1∘phi2 from involution pairs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Human-readable summary instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a pair file: involutivity, transversality, reversibility.
    Check { pairfile: PathBuf },
    /// Classify the pair and report the normal form with a witness.
    Classify { pairfile: PathBuf },
    /// Verify the fixed-subspace chains up to an index bound.
    Chains {
        pairfile: PathBuf,
        #[arg(long, default_value_t = 10)]
        kmax: usize,
    },
    /// Enumerate periodicity certificates from fixed-line intersections.
    Periodic {
        pairfile: PathBuf,
        #[arg(long, default_value_t = 6)]
        kmax: usize,
    },
    /// Bases of the symmetry and reversing-symmetry spaces of F.
    Symmetries { pairfile: PathBuf },
    /// Search for a simultaneous conjugacy between two pairs.
    Conjugate {
        pairfile_a: PathBuf,
        pairfile_b: PathBuf,
    },
    /// Exact orbit of a point under F.
    Orbit {
        pairfile: PathBuf,
        /// Comma-separated exact coordinates, e.g. "1,0" or "1/2,3".
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 10, allow_negative_numbers = true)]
        steps: i64,
    },
    /// Render the fixed-line arrangement (and optional orbit) as SVG.
    Plot {
        pairfile: PathBuf,
        #[arg(long, default_value_t = 8)]
        kmax: usize,
        #[arg(long)]
        out: PathBuf,
        /// Optional orbit start point, comma-separated exact coordinates.
        #[arg(long)]
        orbit: Option<String>,
        #[arg(long, default_value_t = 10, allow_negative_numbers = true)]
        steps: i64,
    },
}

fn main() -> ExitCode {
    // Die quietly when a pager closes the pipe instead of panicking.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn digest(loaded: &LoadedPair) -> InputDigest {
    InputDigest {
        file: loaded.file.clone(),
        sha256: loaded.sha256.clone(),
        dim: loaded.document.dim,
        scalar_context: loaded.document.scalar_context,
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Check { pairfile } => cmd_check(&pairfile, cli.pretty),
        Command::Classify { pairfile } => cmd_classify(&pairfile, cli.pretty),
        Command::Chains { pairfile, kmax } => cmd_chains(&pairfile, kmax, cli.pretty),
        Command::Periodic { pairfile, kmax } => cmd_periodic(&pairfile, kmax, cli.pretty),
        Command::Symmetries { pairfile } => cmd_symmetries(&pairfile, cli.pretty),
        Command::Conjugate {
            pairfile_a,
            pairfile_b,
        } => cmd_conjugate(&pairfile_a, &pairfile_b, cli.pretty),
        Command::Orbit {
            pairfile,
            point,
            steps,
        } => cmd_orbit(&pairfile, &point, steps, cli.pretty),
        Command::Plot {
            pairfile,
            kmax,
            out,
            orbit,
            steps,
        } => cmd_plot(&pairfile, kmax, &out, orbit.as_deref(), steps, cli.pretty),
    }
}

fn cmd_check(pairfile: &Path, pretty: bool) -> Result<ExitCode, CliError> {
    let loaded = LoadedPair::load(pairfile)?;
    let phi1_involution = core::is_involution(&loaded.phi1)?;
    let phi2_involution = core::is_involution(&loaded.phi2)?;
    let f = &loaded.phi1 * &loaded.phi2;
    let transversal = core::fixed_subspace(&loaded.phi1)
        .sum(&core::fixed_subspace(&loaded.phi2))
        .map(|s| s.is_full())
        .unwrap_or(false);
    let reversible = |phi: &core::ExactMatrix| core::is_reversible(&f, phi).unwrap_or(false);
    let f_reversible_by_phi1 = reversible(&loaded.phi1);
    let f_reversible_by_phi2 = reversible(&loaded.phi2);
    let all_passed = phi1_involution
        && phi2_involution
        && transversal
        && f_reversible_by_phi1
        && f_reversible_by_phi2;
    let result = CheckResult {
        phi1_involution,
        phi2_involution,
        transversal,
        f: matrix_strings(&f),
        f_reversible_by_phi1,
        f_reversible_by_phi2,
        all_passed,
    };
    if pretty {
        println!("involution phi1:      {}", verdict(result.phi1_involution));
        println!("involution phi2:      {}", verdict(result.phi2_involution));
        println!("transversal:          {}", verdict(result.transversal));
        println!("F reversible by phi1: {}", verdict(result.f_reversible_by_phi1));
        println!("F reversible by phi2: {}", verdict(result.f_reversible_by_phi2));
        println!("overall:              {}", verdict(result.all_passed));
    } else {
        println!("{}", Report::new("check", vec![digest(&loaded)], result).to_json());
    }
    Ok(if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

fn cmd_classify(pairfile: &Path, pretty: bool) -> Result<ExitCode, CliError> {
    let loaded = LoadedPair::load(pairfile)?;
    let pair = loaded.to_pair()?;
    let res = core::classify(&pair).map_err(CliError::Math)?;
    let verified = res.verify_witness(&pair);
    let result = ClassifyResult {
        case: res.case_tag.as_str().to_string(),
        trace: res.trace_t.to_string(),
        normal_form_phi1: matrix_strings(res.normal_form.phi1()),
        normal_form_phi2: matrix_strings(res.normal_form.phi2()),
        conjugacy: matrix_strings(&res.conjugacy),
        conjugacy_verified: verified,
        suspension: res
            .suspension_split
            .map(|(core_dim, trivial_dim)| SuspensionInfo {
                core_dim,
                trivial_dim,
            }),
        eigen: res.eigen_frame.as_ref().map(eigen_info),
    };
    if pretty {
        println!("case:  {}", result.case);
        println!("trace: {}", result.trace);
        println!("witness verified: {}", verdict(result.conjugacy_verified));
        if let Some(s) = &result.suspension {
            println!("suspension: core {} + trivial {}", s.core_dim, s.trivial_dim);
        }
    } else {
        println!("{}", Report::new("classify", vec![digest(&loaded)], result).to_json());
    }
    Ok(ExitCode::SUCCESS)
}

fn eigen_info(frame: &EigenFrame) -> EigenInfo {
    match frame {
        EigenFrame::Hyperbolic {
            lambda_plus,
            lambda_minus,
            beta,
        } => EigenInfo {
            kind: "hyperbolic",
            lambda_plus: Some(lambda_plus.to_string()),
            lambda_minus: Some(lambda_minus.to_string()),
            theta_cos: None,
            beta: beta.iter().map(|v| vector_strings(v)).collect(),
        },
        EigenFrame::Elliptic { theta_cos, beta } => EigenInfo {
            kind: "elliptic",
            lambda_plus: None,
            lambda_minus: None,
            theta_cos: Some(theta_cos.to_string()),
            beta: beta.iter().map(|v| vector_strings(v)).collect(),
        },
    }
}

fn cmd_chains(pairfile: &Path, kmax: usize, pretty: bool) -> Result<ExitCode, CliError> {
    let loaded = LoadedPair::load(pairfile)?;
    let pair = loaded.to_pair()?;
    let report = core::verify_chain(&pair, kmax).map_err(CliError::Math)?;
    let result = ChainsResult {
        k_max: report.k_max,
        all_links_hold: report.all_links_hold(),
        finite_chain: report.finite_chain,
        distinct_fix_count_even: report.distinct_fix_count_even,
        distinct_fix_count_odd: report.distinct_fix_count_odd,
        subspaces: report
            .subspaces
            .iter()
            .map(|s| s.basis().iter().map(|v| vector_strings(v)).collect())
            .collect(),
        links: report
            .links
            .iter()
            .map(|l| LinkInfo {
                source: l.source.to_string(),
                target: l.target.to_string(),
                source_subspace: l.source_subspace,
                target_subspace: l.target_subspace,
                relation: l.relation.to_string(),
                holds: l.holds,
            })
            .collect(),
        coincidences: report
            .coincidences
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
    };
    let all_hold = result.all_links_hold;
    if pretty {
        println!("links checked: {}", result.links.len());
        println!("all links hold: {}", verdict(all_hold));
        println!("finite chain: {}", result.finite_chain);
        println!(
            "distinct fixed subspaces: {} even, {} odd",
            result.distinct_fix_count_even, result.distinct_fix_count_odd
        );
    } else {
        println!("{}", Report::new("chains", vec![digest(&loaded)], result).to_json());
    }
    // A violated link on a valid involution pair signals non-reversible
    // input or an internal defect; surface it through the exit code.
    Ok(if all_hold {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_periodic(pairfile: &Path, kmax: usize, pretty: bool) -> Result<ExitCode, CliError> {
    let loaded = LoadedPair::load(pairfile)?;
    let pair = loaded.to_pair()?;
    let certs = core::periodic_certificates(&pair, kmax).map_err(CliError::Math)?;
    let result = PeriodicResult {
        k_max: kmax,
        certificates: certs
            .iter()
            .map(|c| CertificateInfo {
                flavor: c.flavor.to_string(),
                k: c.indices.0,
                l: c.indices.1,
                period_divisor: c.period_divisor,
                point: vector_strings(&c.point),
            })
            .collect(),
    };
    if pretty {
        println!("certificates: {}", result.certificates.len());
        for c in &result.certificates {
            println!(
                "  flavor {} (k={}, l={}): F^{} fixes ({})",
                c.flavor,
                c.k,
                c.l,
                c.period_divisor,
                c.point.join(", ")
            );
        }
    } else {
        println!("{}", Report::new("periodic", vec![digest(&loaded)], result).to_json());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_symmetries(pairfile: &Path, pretty: bool) -> Result<ExitCode, CliError> {
    let loaded = LoadedPair::load(pairfile)?;
    let pair = loaded.to_pair()?;
    let f = pair.compose();
    let sym = core::symmetry_space(&f).map_err(CliError::Math)?;
    let rev = core::reversing_space(&f).map_err(CliError::Math)?;
    let result = SymmetriesResult {
        symmetry_dim: sym.dim(),
        reversing_dim: rev.dim(),
        symmetry_basis: sym.basis().iter().map(matrix_strings).collect(),
        reversing_basis: rev.basis().iter().map(matrix_strings).collect(),
    };
    if pretty {
        println!("symmetry space dimension:  {}", result.symmetry_dim);
        println!("reversing space dimension: {}", result.reversing_dim);
    } else {
        println!("{}", Report::new("symmetries", vec![digest(&loaded)], result).to_json());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_conjugate(file_a: &Path, file_b: &Path, pretty: bool) -> Result<ExitCode, CliError> {
    let loaded_a = LoadedPair::load(file_a)?;
    let loaded_b = LoadedPair::load(file_b)?;
    let pair_a = loaded_a.to_pair()?;
    let pair_b = loaded_b.to_pair()?;
    let witness = core::find_conjugacy(&pair_a, &pair_b).map_err(CliError::Math)?;
    let result = match &witness {
        Some(h) => {
            let hinv = h.inverse().map_err(CliError::Math)?;
            let ok = &(&(h * pair_a.phi1()) * &hinv) == pair_b.phi1()
                && &(&(h * pair_a.phi2()) * &hinv) == pair_b.phi2();
            ConjugateResult {
                found: true,
                witness: Some(matrix_strings(h)),
                verified: Some(ok),
            }
        }
        None => ConjugateResult {
            found: false,
            witness: None,
            verified: None,
        },
    };
    if pretty {
        match &result.witness {
            Some(w) => println!("conjugate: yes, witness rows {w:?}"),
            None => println!("conjugate: no invertible witness found"),
        }
    } else {
        println!(
            "{}",
            Report::new(
                "conjugate",
                vec![digest(&loaded_a), digest(&loaded_b)],
                result
            )
            .to_json()
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_orbit(pairfile: &Path, point: &str, steps: i64, pretty: bool) -> Result<ExitCode, CliError> {
    let loaded = LoadedPair::load(pairfile)?;
    let pair = loaded.to_pair()?;
    let x = parse_point(point, pair.dim())?;
    let f = pair.compose();
    let points = core::orbit(&f, &x, steps).map_err(CliError::Math)?;
    let result = OrbitResult {
        point: vector_strings(&x),
        steps,
        points: points.iter().map(|p| vector_strings(p)).collect(),
    };
    if pretty {
        let direction: i64 = if steps < 0 { -1 } else { 1 };
        for (k, p) in result.points.iter().enumerate() {
            println!("F^{}: ({})", direction * k as i64, p.join(", "));
        }
    } else {
        println!("{}", Report::new("orbit", vec![digest(&loaded)], result).to_json());
    }
    Ok(ExitCode::SUCCESS)
}

/// Distinct fixed lines to draw: planar pairs use the arrangement directly
/// (in input coordinates, with no frame change); higher-dimensional pairs
/// must be of the nilpotent-of-index-3 kind and are drawn in normal-form
/// coordinates projected to the first two axes, returning the frame map so
/// orbit overlays live in the same picture.
fn plot_lines(
    pair: &InvolutionPair,
    kmax: usize,
) -> Result<(Vec<(SubspaceBasis, String)>, Option<core::ExactMatrix>), CliError> {
    if pair.dim() == 2 {
        let arrangement = core::SectorArrangement::build(pair, kmax).map_err(CliError::Math)?;
        return Ok((
            arrangement
                .lines
                .iter()
                .map(|l| (l.subspace.clone(), label_text(&l.labels)))
                .collect(),
            None,
        ));
    }
    let res = core::classify(pair).map_err(CliError::Math)?;
    if res.case_tag != CaseTag::GenE {
        return Err(CliError::Math(core::Error::UnsupportedDimension {
            dim: pair.dim(),
            context: "plotting supports planar pairs and the nilpotent-of-index-3 family",
        }));
    }
    let h = &res.conjugacy;
    let mut lines: Vec<(SubspaceBasis, Vec<core::ReversorRef>)> = Vec::new();
    for family in [Family::Unprimed, Family::Primed] {
        for k in 1..=kmax {
            let fix = pair.fix(k, family).map_err(CliError::Math)?;
            let transported = fix.apply(h).map_err(CliError::Math)?;
            // Moving generator projected to the leading plane.
            let Some(v) = transported
                .basis()
                .iter()
                .find(|v| !v[0].is_zero() || !v[1].is_zero())
            else {
                continue;
            };
            let projected =
                SubspaceBasis::from_spanning(2, vec![vec![v[0].clone(), v[1].clone()]]);
            let label = core::ReversorRef { family, k };
            match lines.iter_mut().find(|(s, _)| *s == projected) {
                Some((_, labels)) => labels.push(label),
                None => lines.push((projected, vec![label])),
            }
        }
    }
    Ok((
        lines
            .into_iter()
            .map(|(s, labels)| (s, label_text(&labels)))
            .collect(),
        Some(h.clone()),
    ))
}

fn label_text(labels: &[core::ReversorRef]) -> String {
    let mut parts: Vec<String> = labels.iter().take(3).map(|l| l.to_string()).collect();
    if labels.len() > 3 {
        parts.push("...".to_string());
    }
    parts.join(" = ")
}

/// Dashed invariant/eigen lines of F for the accumulating cases, in the
/// plotted (two-dimensional) coordinates.
fn dashed_lines(pair: &InvolutionPair) -> Vec<(SubspaceBasis, String)> {
    let Ok(res) = core::classify(pair) else {
        return Vec::new();
    };
    let two = Scalar::from_int(2);
    let f = pair.compose();
    let id = core::ExactMatrix::identity(pair.dim());
    let mut out = Vec::new();
    match res.case_tag {
        CaseTag::PlanarNonabelianContained => {
            out.push((
                SubspaceBasis::kernel(&(&f + &id)),
                "eigenline of F".to_string(),
            ));
        }
        CaseTag::PlanarNonabelianGeneric if res.trace_t == two => {
            out.push((SubspaceBasis::kernel(&(&f - &id)), "Fix(F)".to_string()));
        }
        CaseTag::PlanarNonabelianGeneric if res.trace_t == -&two => {
            out.push((
                SubspaceBasis::kernel(&(&f + &id)),
                "eigenline of F".to_string(),
            ));
        }
        CaseTag::PlanarNonabelianGeneric if res.trace_t.abs() > two => {
            if let Some(frame @ EigenFrame::Hyperbolic { .. }) = &res.eigen_frame {
                let b = frame.basis_matrix();
                for (col, name) in [(0, "eigenline (lambda+)"), (1, "eigenline (lambda-)")] {
                    let v = vec![b[(0, col)].clone(), b[(1, col)].clone()];
                    out.push((SubspaceBasis::from_spanning(2, vec![v]), name.to_string()));
                }
            }
        }
        CaseTag::GenE => {
            // Projection of the invariant hyperplane x2 = -2 x1.
            out.push((
                SubspaceBasis::from_spanning(2, vec![vec![Scalar::one(), Scalar::from_int(-2)]]),
                "invariant line of F".to_string(),
            ));
        }
        _ => {}
    }
    out
}

fn cmd_plot(
    pairfile: &Path,
    kmax: usize,
    out: &Path,
    orbit_point: Option<&str>,
    steps: i64,
    pretty: bool,
) -> Result<ExitCode, CliError> {
    let loaded = LoadedPair::load(pairfile)?;
    let pair = loaded.to_pair()?;
    let (fixed, frame) = plot_lines(&pair, kmax)?;
    let dashed = dashed_lines(&pair);
    let mut doc = svg::SvgDocument::new();
    for (space, label) in &dashed {
        doc.add_line(&svg::line_from_subspace(space, label.clone(), true));
    }
    for (space, label) in &fixed {
        doc.add_line(&svg::line_from_subspace(space, label.clone(), false));
    }
    let mut orbit_len = None;
    if let Some(text) = orbit_point {
        let x = parse_point(text, pair.dim())?;
        let f = pair.compose();
        let points = core::orbit(&f, &x, steps).map_err(CliError::Math)?;
        // Keep the orbit in the same coordinates as the drawn lines.
        let planar: Vec<Vec<Scalar>> = points
            .iter()
            .map(|p| {
                let q = match &frame {
                    Some(h) => h.apply_vec(p),
                    None => p.clone(),
                };
                vec![q[0].clone(), q[1].clone()]
            })
            .collect();
        orbit_len = Some(planar.len());
        doc.add_orbit(&planar);
    }
    let svg_text = doc.finish();
    std::fs::write(out, &svg_text)
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", out.display())))?;
    let result = PlotResult {
        out: out.display().to_string(),
        fixed_line_count: fixed.len(),
        fixed_line_labels: fixed.iter().map(|(_, l)| l.clone()).collect(),
        dashed_line_count: dashed.len(),
        orbit_points: orbit_len,
    };
    if pretty {
        println!(
            "wrote {} ({} fixed lines, {} dashed)",
            result.out, result.fixed_line_count, result.dashed_line_count
        );
    } else {
        println!("{}", Report::new("plot", vec![digest(&loaded)], result).to_json());
    }
    Ok(ExitCode::SUCCESS)
}
