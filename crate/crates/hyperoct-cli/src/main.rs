//! Batch command-line surface over the hyperoct library: algebra file
//! validation, degree-zero homology reports, reduction certificates,
//! hom-set enumeration and composition, and the verification suites.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage
//! errors. Reports are deterministic for a fixed seed and configuration.

use clap::{Parser, Subcommand, ValueEnum};
use hyperoct::algebra::InvolutiveAlgebra;
use hyperoct::category::{enumerate_hom, hom_count, LabelledFiberMap, DEFAULT_ENUM_CAP};
use hyperoct::degree_zero::{ho0, ideal_check, verify_exactness};
use hyperoct::linalg::CokernelData;
use hyperoct::operads::{verify_module_axioms, verify_operad_axioms, verify_simplicial, CheckedLaw};
use hyperoct::reduction::{reduce, verify_certificate, ReductionCertificate};
use hyperoct::scalar::ScalarRing;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "hyperoct", version, about = "Exact computations in the hyperoctahedral category")]
struct Cli {
    /// Seed for every randomized verification pass.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Hom-set enumeration guard.
    #[arg(long, global = true, env = "HYPEROCT_ENUM_CAP")]
    enum_cap: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect algebra specification files.
    Algebra {
        #[command(subcommand)]
        command: AlgebraCommand,
    },
    /// Degree-zero homology report for an algebra file.
    Ho0 {
        file: PathBuf,
        /// Reinterpret the file over a different scalar ring.
        #[arg(long)]
        ring: Option<String>,
    },
    /// Reduce a morphism into [0] and emit the certificate.
    Reduce {
        /// The morphism, e.g. "HOM 1 0 : 1^+ 0^-".
        #[arg(long)]
        morphism: String,
        /// Write the certificate to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a reduction certificate file.
    VerifyCert { file: PathBuf },
    /// Run a verification suite.
    Verify {
        #[command(subcommand)]
        suite: VerifySuite,
    },
    /// Enumerate or compose hom-sets.
    Hom {
        #[command(subcommand)]
        command: HomCommand,
    },
}

#[derive(Subcommand)]
enum AlgebraCommand {
    /// Validate a file and echo its canonical form.
    Check { file: PathBuf },
}

#[derive(Subcommand)]
enum VerifySuite {
    /// Operad axioms at small arity.
    Operad {
        #[arg(long, default_value_t = 3)]
        max: usize,
        #[arg(long, default_value_t = 200)]
        random: usize,
    },
    /// Left-module axioms, evaluation square and finite bijectivity.
    Module {
        #[arg(long, default_value_t = 2)]
        max_m: usize,
        #[arg(long, default_value_t = 2)]
        max_j: usize,
        #[arg(long, default_value_t = 3)]
        rank_cap: i32,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Exactness of the degree-zero resolution.
    Exactness {
        #[arg(long, default_value_t = 2)]
        max_n: i32,
        #[arg(long, default_value = "Q")]
        ring: String,
    },
    /// Simplicial identities and quotient compatibility.
    Simplicial {
        #[arg(long, default_value_t = 60)]
        strings: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

#[derive(Subcommand)]
enum HomCommand {
    /// List a hom-set in canonical order.
    Enumerate {
        #[arg(allow_negative_numbers = true)]
        source: i32,
        #[arg(allow_negative_numbers = true)]
        target: i32,
    },
    /// Compose two morphisms (outer first).
    Compose { outer: String, inner: String },
}

/// Ordered key-value report with a stable rendering in both formats.
struct Report {
    rows: Vec<(String, String)>,
}

impl Report {
    fn new() -> Self {
        Report { rows: Vec::new() }
    }

    fn push(&mut self, key: &str, value: impl ToString) {
        self.rows.push((key.to_string(), value.to_string()));
    }

    fn render(&self, format: Format) -> String {
        let mut out = String::new();
        for (k, v) in &self.rows {
            match format {
                Format::Text => writeln!(out, "{k}: {v}").unwrap(),
                Format::Structured => writeln!(out, "{}={v}", k.replace(' ', ".")).unwrap(),
            }
        }
        out
    }
}

fn law(report: &mut Report, name: &str, l: &CheckedLaw) {
    report.push(&format!("{name} instances"), l.instances);
    report.push(
        &format!("{name} result"),
        if l.passed() { "pass".to_string() } else { l.failure.clone().unwrap_or_default() },
    );
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl Failure {
    fn code(&self) -> ExitCode {
        match self {
            Failure::Usage(_) => ExitCode::from(2),
            Failure::Verification(_) => ExitCode::from(1),
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Verification(m) => m,
        }
    }
}

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            failure.code()
        }
    }
}

fn load_algebra(file: &PathBuf, ring_override: &Option<String>) -> Result<InvolutiveAlgebra, Failure> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| usage(format!("cannot read {}: {e}", file.display())))?;
    let text = match ring_override {
        None => text,
        Some(name) => {
            // reinterpret the structure constants over the requested ring
            ScalarRing::parse_name(name).map_err(usage)?;
            let mut replaced = String::new();
            for line in text.lines() {
                if line.trim_start().starts_with("ring") {
                    replaced.push_str(&format!("ring {name}\n"));
                } else {
                    replaced.push_str(line);
                    replaced.push('\n');
                }
            }
            replaced
        }
    };
    InvolutiveAlgebra::parse(&text).map_err(usage)
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let cap = cli.enum_cap.unwrap_or(DEFAULT_ENUM_CAP);
    match &cli.command {
        Command::Algebra { command: AlgebraCommand::Check { file } } => {
            let algebra = load_algebra(file, &None)?;
            let mut report = Report::new();
            report.push("algebra file", file.display());
            report.push("algebra ring", algebra.ring().name());
            report.push("algebra dimension", algebra.dim());
            report.push("algebra valid", "yes");
            let mut out = report.render(cli.format);
            out.push_str(&algebra.canonical_text());
            Ok(out)
        }
        Command::Ho0 { file, ring } => {
            let algebra = load_algebra(file, ring)?;
            let h = ho0(&algebra);
            let ideal = ideal_check(&algebra);
            let mut report = Report::new();
            report.push("algebra file", file.display());
            report.push("algebra ring", algebra.ring().name());
            report.push("algebra dimension", algebra.dim());
            match &h.presentation.data {
                CokernelData::Field { quotient_dimension, .. } => {
                    report.push("ho0 dimension", quotient_dimension);
                }
                CokernelData::Integers { free_rank, .. } => {
                    report.push("ho0 free rank", free_rank);
                    let torsion = h.presentation.torsion();
                    let torsion = if torsion.is_empty() {
                        "none".to_string()
                    } else {
                        torsion.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
                    };
                    report.push("ho0 torsion", torsion);
                }
            }
            report.push("ideal span rank", ideal.span_rank);
            report.push("ideal closed", if ideal.closed { "yes" } else { "no" });
            if let Some(qr) = &h.quotient_ring {
                let names: Vec<String> = qr
                    .class_representatives
                    .iter()
                    .map(|&i| algebra.basis_name(i).to_string())
                    .collect();
                report.push("quotient basis", names.join(" "));
                if qr.dimension() <= 12 {
                    for (i, &ri) in qr.class_representatives.iter().enumerate() {
                        for (j, &rj) in qr.class_representatives.iter().enumerate() {
                            let product = &qr.table[i * qr.dimension() + j];
                            let rendered = if product.is_zero() {
                                "0".to_string()
                            } else {
                                product
                                    .iter()
                                    .map(|(k, c)| {
                                        let name = algebra.basis_name(qr.class_representatives[k]);
                                        if algebra.ring().is_one(c) {
                                            name.to_string()
                                        } else {
                                            format!("{c}*{name}")
                                        }
                                    })
                                    .collect::<Vec<_>>()
                                    .join(" + ")
                            };
                            report.push(
                                &format!(
                                    "table {}*{}",
                                    algebra.basis_name(ri),
                                    algebra.basis_name(rj)
                                ),
                                rendered,
                            );
                        }
                    }
                }
            }
            if !ideal.closed {
                return Err(Failure::Verification(report.render(cli.format)));
            }
            Ok(report.render(cli.format))
        }
        Command::Reduce { morphism, out } => {
            let f = LabelledFiberMap::parse(morphism).map_err(usage)?;
            if f.target_rank() != 0 || f.source_rank() < 0 {
                return Err(usage("reduction expects a morphism [n] -> [0] with n >= 0"));
            }
            let cert = reduce(&f);
            verify_certificate(&cert)
                .map_err(|e| Failure::Verification(format!("produced certificate failed: {e}")))?;
            let text = cert.to_string();
            if let Some(path) = out {
                std::fs::write(path, &text)
                    .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
                Ok(format!("certificate with {} steps written to {}\n", cert.steps.len(), path.display()))
            } else {
                Ok(text)
            }
        }
        Command::VerifyCert { file } => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| usage(format!("cannot read {}: {e}", file.display())))?;
            let cert = ReductionCertificate::parse(&text).map_err(usage)?;
            match verify_certificate(&cert) {
                Ok(()) => Ok(format!("certificate valid: {} steps\n", cert.steps.len())),
                Err(e) => Err(Failure::Verification(format!("certificate invalid: {e}"))),
            }
        }
        Command::Verify { suite } => run_verify(cli, suite, cap),
        Command::Hom { command } => match command {
            HomCommand::Enumerate { source, target } => {
                if *source < -1 || *target < -1 {
                    return Err(usage("ranks must be at least -1"));
                }
                let homs = enumerate_hom(*source, *target, cap).map_err(usage)?;
                let mut out = String::new();
                for f in &homs {
                    writeln!(out, "{f}").unwrap();
                }
                writeln!(out, "count: {}", homs.len()).unwrap();
                if let Some(expected) = hom_count(*source, *target) {
                    writeln!(out, "formula: {expected}").unwrap();
                }
                Ok(out)
            }
            HomCommand::Compose { outer, inner } => {
                let g = LabelledFiberMap::parse(outer).map_err(usage)?;
                let f = LabelledFiberMap::parse(inner).map_err(usage)?;
                if f.target_rank() != g.source_rank() {
                    return Err(usage(format!(
                        "not composable: inner target {} vs outer source {}",
                        f.target_rank(),
                        g.source_rank()
                    )));
                }
                Ok(format!("{}\n", LabelledFiberMap::compose(&g, &f)))
            }
        },
    }
}

fn run_verify(cli: &Cli, suite: &VerifySuite, cap: u64) -> Result<String, Failure> {
    match suite {
        VerifySuite::Operad { max, random } => {
            let r = verify_operad_axioms(*max, *max, *random, cli.seed);
            let mut report = Report::new();
            report.push("suite", "operad");
            report.push("max arity", max);
            law(&mut report, "unit", &r.unit);
            law(&mut report, "associativity", &r.associativity);
            law(&mut report, "equivariance outer", &r.equivariance_outer);
            law(&mut report, "equivariance inner", &r.equivariance_inner);
            law(&mut report, "freeness", &r.freeness);
            law(&mut report, "contractibility", &r.contractibility);
            report.push("overall", if r.passed() { "pass" } else { "fail" });
            let rendered = report.render(cli.format);
            if r.passed() {
                Ok(rendered)
            } else {
                Err(Failure::Verification(rendered))
            }
        }
        VerifySuite::Module { max_m, max_j, rank_cap, samples } => {
            let r = verify_module_axioms(*max_m, *max_j, *rank_cap, *samples, cli.seed);
            let mut report = Report::new();
            report.push("suite", "module");
            report.push("max operad arity", max_m);
            report.push("max module arity", max_j);
            report.push("rank cap", rank_cap);
            law(&mut report, "unit", &r.unit);
            law(&mut report, "associativity", &r.associativity);
            law(&mut report, "equivariance outer", &r.equivariance_outer);
            law(&mut report, "equivariance inner", &r.equivariance_inner);
            law(&mut report, "evaluation square", &r.evaluation_square);
            law(&mut report, "orbit invariance", &r.orbit_invariance);
            law(&mut report, "bijective count", &r.bijective_count);
            law(&mut report, "factorization", &r.factorization_round_trip);
            law(&mut report, "monoidal strictness", &r.monoidal_strictness);
            report.push("overall", if r.passed() { "pass" } else { "fail" });
            let rendered = report.render(cli.format);
            if r.passed() {
                Ok(rendered)
            } else {
                Err(Failure::Verification(rendered))
            }
        }
        VerifySuite::Exactness { max_n, ring } => {
            let ring = ScalarRing::parse_name(ring).map_err(usage)?;
            let mut report = Report::new();
            report.push("suite", "exactness");
            report.push("ring", ring.name());
            let mut all = true;
            for n in 0..=*max_n {
                let r = verify_exactness(n, &ring, cap).map_err(usage)?;
                report.push(&format!("n{n} hom to point"), r.hom_to_point);
                report.push(&format!("n{n} hom to plane"), r.hom_to_plane);
                report.push(
                    &format!("n{n} composite zero"),
                    if r.composite_is_zero { "yes" } else { "no" },
                );
                report.push(&format!("n{n} image rank"), r.image_rank);
                report.push(&format!("n{n} kernel rank"), r.kernel_rank);
                all &= r.passed();
            }
            report.push("overall", if all { "pass" } else { "fail" });
            let rendered = report.render(cli.format);
            if all {
                Ok(rendered)
            } else {
                Err(Failure::Verification(rendered))
            }
        }
        VerifySuite::Simplicial { strings, samples } => {
            let f2 = ScalarRing::prime_field(2).map_err(usage)?;
            let group = hyperoct::algebra::FiniteGroup::cyclic(2);
            let algebra = hyperoct::algebra::group_algebra(f2, &group).map_err(usage)?;
            let r = verify_simplicial(&algebra, *strings, *samples, cli.seed);
            let mut report = Report::new();
            report.push("suite", "simplicial");
            law(&mut report, "face face", &r.face_face);
            law(&mut report, "face degeneracy", &r.face_degeneracy);
            law(&mut report, "degeneracy degeneracy", &r.degeneracy_degeneracy);
            law(&mut report, "quotient faces", &r.quotient_faces);
            report.push("overall", if r.passed() { "pass" } else { "fail" });
            let rendered = report.render(cli.format);
            if r.passed() {
                Ok(rendered)
            } else {
                Err(Failure::Verification(rendered))
            }
        }
    }
}
