use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use theta_kit::cellular::{boundary, omega, representable_map, sigma_j, sigma_j_map, smash, PresheafMap, TruncatedPresheaf};
use theta_kit::shift::{collapse_maps, eckmann_hilton};
use theta_kit::skeletal::{classify, coface_factor, coface_pullback, skeletal_factorize, CofacePullback};
use theta_kit::spectra::{
    cellular_suspension_prefix, is_kan_spectrum, suspension_spectrum_prefix, KanSpectrumWindow, PointedSimplicialSet,
};
use theta_kit::theta::{Cell, ThetaMap};
use theta_kit::verify;
use theta_kit::Error;

#[derive(Parser)]
#[command(name = "theta", version, about = "Cells, maps and suspensions in the category Θ")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Truncation bound for presheaf constructions.
    #[arg(long, global = true)]
    bound: Option<usize>,
    /// Operator bound for spectrum windows.
    #[arg(long, global = true)]
    opbound: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Lines,
}

#[derive(Subcommand)]
enum Verb {
    /// Globular sum of a cell.
    Decompose { cell: String },
    /// The maps S -> T.
    Hom {
        src: String,
        tgt: String,
        #[arg(long)]
        count: bool,
    },
    /// beta ∘ alpha, both written `S -> T : {...}`.
    Compose { beta: String, alpha: String },
    /// Negative/positive factorization and the coface chain.
    Factor { map: String },
    /// Fiber product of two cofaces with a common target.
    Pullback { f: String, g: String },
    /// J of a cell or map; with --unshift, its inverse.
    Shift {
        item: String,
        #[arg(long)]
        unshift: bool,
    },
    /// K_p(T) with the maps C, D_p, F_p.
    Collapse { p: usize, cell: String },
    /// E_T : J(T) -> T.
    Eh { cell: String },
    /// Σ_J of a presheaf fixture (`-` reads stdin).
    Suspend { file: String },
    /// Ω of a presheaf fixture.
    Omega { file: String },
    /// Smash product of two presheaf fixtures.
    Smash { left: String, right: String },
    /// Whether Σ_J keeps ∂Θ^T -> Θ^T, or Θ^α for a map α, injective.
    CheckMono { item: String },
    /// Suspension prefix of `sphere:<n>`, `simplex:<n>` or a presheaf fixture.
    Stabilize {
        source: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Stability report for a spectrum window fixture.
    CheckSpectrum { file: String },
    /// Run a named invariant suite.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(verify::SUITES))]
        suite: String,
    },
}

enum Failure {
    Input(String),
    Domain(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Parse { .. } => Failure::Input(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

struct Out {
    format: Format,
}

impl Out {
    fn field(&self, key: &str, value: impl std::fmt::Display) {
        match self.format {
            Format::Text => println!("{key}: {value}"),
            Format::Lines => println!("{key}\t{value}"),
        }
    }

    fn block(&self, text: &str) {
        print!("{text}");
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    let mut s = String::new();
    let r = if path == "-" { io::stdin().read_to_string(&mut s).map(|_| ()) } else { fs::read_to_string(path).map(|t| s = t) };
    r.map_err(|e| Failure::Input(format!("{path}: {e}")))?;
    Ok(s)
}

fn presheaf(path: &str) -> Result<TruncatedPresheaf, Failure> {
    Ok(read_input(path)?.parse()?)
}

fn cell(text: &str) -> Result<Cell, Failure> {
    Ok(text.parse()?)
}

fn map(text: &str) -> Result<ThetaMap, Failure> {
    Ok(ThetaMap::parse_full(text)?)
}

fn run(cli: &Cli) -> Outcome {
    let out = Out { format: cli.format };
    match &cli.verb {
        Verb::Decompose { cell: c } => out.field("sum", cell(c)?.globular_sum()),
        Verb::Hom { src, tgt, count } => {
            let (s, t) = (cell(src)?, cell(tgt)?);
            if *count {
                out.field("count", ThetaMap::hom_count(&s, &t));
            } else {
                let maps = ThetaMap::hom(&s, &t);
                out.field("count", maps.len());
                for m in maps {
                    out.field("map", m.to_full_string());
                }
            }
        }
        Verb::Compose { beta, alpha } => out.field("map", map(beta)?.compose(&map(alpha)?)?.to_full_string()),
        Verb::Factor { map: m } => {
            let m = map(m)?;
            let (neg, pos) = skeletal_factorize(&m);
            out.field("class", classify(&m));
            out.field("negative", neg.to_full_string());
            out.field("positive", pos.to_full_string());
            for c in coface_factor(&pos)? {
                out.field("coface", c.to_full_string());
            }
        }
        Verb::Pullback { f, g } => match coface_pullback(&map(f)?, &map(g)?)? {
            CofacePullback::Cell { cell, proj_left, proj_right } => {
                out.field("cell", cell);
                out.field("left", proj_left.to_full_string());
                out.field("right", proj_right.to_full_string());
            }
            CofacePullback::Empty => out.field("cell", "empty"),
            CofacePullback::Presheaf(w) => out.field("presheaf", w),
        },
        Verb::Shift { item, unshift } => {
            if item.contains("->") {
                let m = map(item)?;
                let r = if *unshift {
                    m.unshift().cloned().ok_or_else(|| Failure::Domain(format!("{} is not a shifted map", m.to_full_string())))?
                } else {
                    m.shift()
                };
                out.field("map", r.to_full_string());
            } else {
                let c = cell(item)?;
                let r = if *unshift {
                    c.unshift().cloned().ok_or_else(|| Failure::Domain(format!("{c} is not a shifted cell")))?
                } else {
                    c.shift()
                };
                out.field("cell", r);
            }
        }
        Verb::Collapse { p, cell: c } => {
            let d = collapse_maps(*p, &cell(c)?)?;
            out.field("cell", &d.cell);
            out.field("c", d.c_map.to_full_string());
            out.field("d", d.d_map.to_full_string());
            out.field("f", d.f_map.to_full_string());
        }
        Verb::Eh { cell: c } => out.field("map", eckmann_hilton(&cell(c)?).to_full_string()),
        Verb::Suspend { file } => out.block(&sigma_j(&presheaf(file)?)?.to_string()),
        Verb::Omega { file } => out.block(&omega(&presheaf(file)?)?.to_string()),
        Verb::Smash { left, right } => out.block(&smash(&presheaf(left)?, &presheaf(right)?)?.to_string()),
        Verb::CheckMono { item } => {
            let inc: PresheafMap = if item.contains("->") {
                let m = map(item)?;
                representable_map(&m, cli.bound.unwrap_or(m.tgt().degree().max(1)), true)
            } else {
                let c = cell(item)?;
                boundary(&c, cli.bound.unwrap_or(c.degree().max(1)), true).1
            };
            let before = inc.is_mono();
            let after = sigma_j_map(&inc)?.is_mono();
            out.field("mono", before);
            out.field("suspension-mono", after);
            if before && !after {
                return Err(Failure::Verification);
            }
        }
        Verb::Stabilize { source, depth } => stabilize(&out, cli, source, *depth)?,
        Verb::CheckSpectrum { file } => {
            let mut w: KanSpectrumWindow = read_input(file)?.parse()?;
            set_opbound(&mut w, cli.opbound);
            let r = is_kan_spectrum(&w)?;
            match out.format {
                Format::Text => out.block(&r.to_string()),
                Format::Lines => {
                    out.field("holds", r.holds());
                    out.field("opbound", r.opbound);
                    out.field("certified", r.certified());
                    out.field("not-refuted", r.not_refuted());
                    for (z, x) in r.violators() {
                        out.field("violator", format!("{z} {x}"));
                    }
                }
            }
            if !r.holds() {
                return Err(Failure::Verification);
            }
        }
        Verb::Verify { suite } => {
            let checks = verify::run_suite(suite).expect("suite names are validated by the parser");
            let mut ok = true;
            for c in &checks {
                ok &= c.passed();
                match out.format {
                    Format::Text => println!("{c}"),
                    Format::Lines => println!(
                        "{}\t{}\t{}\t{}",
                        if c.passed() { "pass" } else { "fail" },
                        c.name,
                        c.cases,
                        c.failure.as_deref().unwrap_or("-")
                    ),
                }
            }
            if !ok {
                return Err(Failure::Verification);
            }
        }
    }
    Ok(())
}

/// Operators past a lowered bound are dropped from the window.
fn set_opbound(w: &mut KanSpectrumWindow, b: Option<usize>) {
    if let Some(b) = b {
        w.opbound = b;
        w.faces.retain(|&(i, _), _| i <= b);
        w.degeneracies.retain(|&(j, _), _| j <= b);
    }
}

fn stabilize(out: &Out, cli: &Cli, source: &str, depth: usize) -> Outcome {
    let simplicial = |s: &str, tag: &str| s.strip_prefix(tag).map(|n| n.parse::<usize>());
    let x = if let Some(n) = simplicial(source, "sphere:") {
        let n = n.map_err(|e| Failure::Input(format!("{source}: {e}")))?;
        Some(PointedSimplicialSet::sphere(n, cli.bound.unwrap_or(n)))
    } else if let Some(n) = simplicial(source, "simplex:") {
        let n = n.map_err(|e| Failure::Input(format!("{source}: {e}")))?;
        Some(PointedSimplicialSet::representable(n, cli.bound.unwrap_or(n)))
    } else {
        None
    };
    if let Some(x) = x {
        let (mut w, _) = suspension_spectrum_prefix(&x, depth)?;
        set_opbound(&mut w, cli.opbound);
        out.block(&w.to_string());
        return Ok(());
    }
    let win = cellular_suspension_prefix(&presheaf(source)?, depth)?;
    win.check_round_trips()?;
    for (k, level) in win.levels.iter().enumerate() {
        let names: Vec<String> = win.stable_cells(k).iter().map(ToString::to_string).collect();
        out.field("level", format!("{k} {}", names.join(" ")));
        if out.format == Format::Text {
            out.block(&level.to_string());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
