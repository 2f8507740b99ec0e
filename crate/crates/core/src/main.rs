use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use principal_basis::adjoint::{certify, module_dimensions, positive_structure_constants, principal_triple};
use principal_basis::cache::OrbitCache;
use principal_basis::output::{rational_strings, InfoDocument, OutputDocument};
use principal_basis::principal::{
    dual_principal_computation, principal_computation, BasisOptions, PrincipalBasis, Route,
};
use principal_basis::rootsys::{build_root_system, LieType, DEFAULT_ORBIT_CAP};
use principal_basis::Error;

const EXIT_INVALID: u8 = 2;
const EXIT_DEPENDENT: u8 = 3;
const EXIT_UNCERTIFIED: u8 = 4;

#[derive(Parser)]
#[command(
    name = "principal-basis",
    version,
    about = "Principal bases of Cartan subalgebras, computed and certified exactly"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the principal basis of h (or h* with --dual).
    Basis {
        /// Lie type, e.g. A2, D4, G2, E6.
        lie_type: LieType,
        #[arg(long)]
        dual: bool,
        /// Certify through the ad(e0) kernel filtration; exit 4 on failure.
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value_t = RouteArg::Auto)]
        route: RouteArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// 1-based fundamental weight seeding the orbit route.
        #[arg(long)]
        seed_weight: Option<usize>,
        #[arg(long)]
        allow_e8: bool,
        /// Reuse Weyl orbits stored on disk.
        #[arg(long)]
        orbit_cache: bool,
        #[arg(long, default_value_t = DEFAULT_ORBIT_CAP)]
        orbit_cap: usize,
    },
    /// Root-system data.
    Info {
        lie_type: LieType,
        #[arg(value_enum)]
        query: Query,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Certify a basis document previously written with --format json.
    Certify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Classical,
    Orbit,
    Auto,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Query {
    Exponents,
    Roots,
    Dual,
    Dims,
    Triple,
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::Dependent { .. } => EXIT_DEPENDENT,
        Error::InvalidRank { .. }
        | Error::ParseType(_)
        | Error::E8NotAllowed(..)
        | Error::InvalidSeedWeight { .. }
        | Error::UnsupportedFamily { .. }
        | Error::OrbitCapExceeded { .. } => EXIT_INVALID,
        _ => 1,
    }
}

fn emit(doc: &OutputDocument, format: Format) {
    match format {
        Format::Json => println!("{}", doc.to_json()),
        Format::Text => print!("{}", doc.to_text()),
    }
}

/// Certificates are computed on `h`; a dual basis is first carried over to
/// the Cartan of the Langlands dual.
fn certified(doc: OutputDocument, pb: &PrincipalBasis) -> (OutputDocument, bool) {
    let target = if pb.dual { pb.as_dual_type_basis() } else { pb.clone() };
    let rs = build_root_system(target.lie_type);
    let sc = positive_structure_constants(&rs);
    let report = certify(&target, &rs, &sc);
    let ok = report.certified();
    (doc.with_certification(&report, target.lie_type), ok)
}

#[allow(clippy::too_many_arguments)]
fn cmd_basis(
    t: LieType,
    dual: bool,
    verify: bool,
    route: RouteArg,
    format: Format,
    seed_weight: Option<usize>,
    allow_e8: bool,
    orbit_cache: bool,
    orbit_cap: usize,
) -> ExitCode {
    if seed_weight == Some(0) {
        return fail(EXIT_INVALID, "--seed-weight is 1-based");
    }
    let cache = if orbit_cache {
        match OrbitCache::from_env() {
            Ok(c) => Some(c),
            Err(e) => return fail(EXIT_INVALID, e),
        }
    } else {
        None
    };
    let opts = BasisOptions {
        route: match route {
            RouteArg::Classical => Route::Classical,
            RouteArg::Orbit => Route::Orbit,
            RouteArg::Auto => Route::Auto,
        },
        seed_weight: seed_weight.map(|k| k - 1),
        orbit_cap,
        allow_e8,
        cache,
    };
    let rs = build_root_system(t);
    let computed = if dual {
        dual_principal_computation(&rs, &opts).map(|c| c.basis)
    } else {
        principal_computation(&rs, &opts).map(|c| c.basis)
    };
    let pb = match computed {
        Ok(pb) => pb,
        Err(e) => return fail(error_code(&e), e),
    };
    let doc = OutputDocument::from_basis(&pb, &rs);
    if !verify {
        emit(&doc, format);
        return ExitCode::SUCCESS;
    }
    let (doc, ok) = certified(doc, &pb);
    emit(&doc, format);
    if ok {
        ExitCode::SUCCESS
    } else {
        fail(EXIT_UNCERTIFIED, "certification failed")
    }
}

fn cmd_info(t: LieType, query: Query, format: Format) -> ExitCode {
    let rs = build_root_system(t);
    let (name, rows): (&str, Vec<Vec<String>>) = match query {
        Query::Exponents => ("exponents", vec![rs.exponents().iter().map(u32::to_string).collect()]),
        Query::Roots => {
            ("roots", rs.positive_roots().iter().map(|r| r.coeffs.iter().map(i64::to_string).collect()).collect())
        }
        Query::Dual => ("dual", vec![vec![t.langlands_dual().to_string()]]),
        Query::Dims => ("dims", vec![module_dimensions(&rs).iter().map(usize::to_string).collect()]),
        Query::Triple => {
            let triple = principal_triple(&rs);
            let mut h0 = vec!["h0".to_string()];
            h0.extend(rational_strings(&triple.h0_coroot));
            let mut c = vec!["c".to_string()];
            c.extend(rational_strings(&triple.c));
            ("triple", vec![h0, c])
        }
    };
    let doc = InfoDocument::new(t, name, rows);
    match format {
        Format::Json => println!("{}", doc.to_json()),
        Format::Text => print!("{}", doc.to_text()),
    }
    ExitCode::SUCCESS
}

fn cmd_certify(file: PathBuf, format: Format) -> ExitCode {
    let text = match std::fs::read_to_string(&file) {
        Ok(t) => t,
        Err(e) => return fail(EXIT_INVALID, format!("{}: {e}", file.display())),
    };
    let doc: OutputDocument = match serde_json::from_str(&text) {
        Ok(d) => d,
        Err(e) => return fail(EXIT_INVALID, format!("{}: {e}", file.display())),
    };
    let pb = match doc.to_basis() {
        Ok(pb) => pb,
        Err(e) => return fail(EXIT_INVALID, e),
    };
    let (doc, ok) = certified(doc, &pb);
    emit(&doc, format);
    if ok {
        ExitCode::SUCCESS
    } else {
        fail(EXIT_UNCERTIFIED, "certification failed")
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Basis { lie_type, dual, verify, route, format, seed_weight, allow_e8, orbit_cache, orbit_cap } => {
            cmd_basis(lie_type, dual, verify, route, format, seed_weight, allow_e8, orbit_cache, orbit_cap)
        }
        Command::Info { lie_type, query, format } => cmd_info(lie_type, query, format),
        Command::Certify { file, format } => cmd_certify(file, format),
    }
}
