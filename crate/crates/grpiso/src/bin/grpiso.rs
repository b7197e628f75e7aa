use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use grpiso::abelian_engine::abelian_basis;
use grpiso::blackbox::{build_group, BlackBoxGroup, ClassSGroupSpec, Element, TableGroup};
use grpiso::decompose::{standard_decompose, verify_standard_decomposition};
use grpiso::dlog_conj::{dlog_up_to_conjugacy, ConjLogInstance};
use grpiso::gen::{random_specs, Sampler};
use grpiso::iso::{group_isomorphism, verify_images, IsoOutcome};
use grpiso::matrix_forms::{elementary_divisors, invariant_factors, mat_order, matrix_to_text, parse_matrices, rational_normal_form};
use grpiso::quantum_sim::{hsp_solve, shor_order_traced, DEFAULT_RETRIES};
use grpiso::selftest::{self, Options};
use grpiso::setdlog::{parse_instance, set_discrete_log};
use grpiso::{Error, Result};

#[derive(Parser)]
#[command(name = "grpiso", version, about = "Isomorphism testing for abelian-by-cyclic groups of coprime order")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write random group specs.
    Gen {
        /// Cyclic factor orders of A, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        abelian: Vec<u64>,
        #[arg(long, default_value_t = 1)]
        m: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// power, semisimple or auto.
        #[arg(long, default_value = "auto")]
        sampler: String,
        /// Directory for spec_NNNN.txt files; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Standard decomposition of a group.
    Decompose { group: PathBuf },
    /// Decide whether two groups are isomorphic.
    Iso {
        a: PathBuf,
        b: PathBuf,
        /// Write the generator image table here.
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Verify a previously emitted table instead of searching.
        #[arg(long, conflicts_with = "emit")]
        check: Option<PathBuf>,
    },
    /// Set discrete logarithm.
    Setdlog { file: PathBuf },
    /// Discrete logarithm up to conjugacy.
    Conjlog { file: PathBuf },
    /// Invariant factors, rational form and elementary divisors.
    Matform { file: PathBuf },
    /// Print a simulated order-finding run and a hidden subgroup run.
    QuantumDemo {
        #[arg(long, default_value_t = 7)]
        a: u64,
        #[arg(long, default_value_t = 15)]
        n: u64,
    },
    /// Run the acceptance checks.
    Selftest {
        /// Run a single check.
        #[arg(long)]
        only: Option<usize>,
        /// Corrupt certificates before verification.
        #[arg(long)]
        inject_fault: bool,
    },
}

enum Verdict {
    Positive,
    Negative,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Spec files are `key = value` lines; anything else is a multiplication table.
fn load_group(path: &Path) -> Result<Box<dyn BlackBoxGroup>> {
    let text = read(path)?;
    let is_spec = text.lines().any(|l| l.split('#').next().unwrap().contains('='));
    if is_spec {
        Ok(Box::new(build_group(&ClassSGroupSpec::parse(&text)?)?))
    } else {
        Ok(Box::new(TableGroup::parse(&text)?))
    }
}

fn gen(abelian: Vec<u64>, m: u64, count: usize, sampler: &str, out: Option<PathBuf>, seed: u64) -> Result<Verdict> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let specs = random_specs(&abelian, m, count, sampler.parse::<Sampler>()?, &mut rng)?;
    match out {
        Some(dir) => {
            fs::create_dir_all(&dir)?;
            for (i, s) in specs.iter().enumerate() {
                fs::write(dir.join(format!("spec_{i:04}.txt")), s.to_string())?;
            }
            println!("wrote {} specs to {}", specs.len(), dir.display());
        }
        None => {
            for (i, s) in specs.iter().enumerate() {
                println!("# spec {i}\n{s}");
            }
        }
    }
    Ok(Verdict::Positive)
}

fn decompose(path: &Path) -> Result<Verdict> {
    let g = load_group(path)?;
    let sd = standard_decompose(g.as_ref())?;
    let basis = abelian_basis(g.as_ref(), &sd.a_gens)?;
    let ok = verify_standard_decomposition(g.as_ref(), &sd);
    println!("|A| = {}", basis.size());
    println!("basis orders = {:?}", basis.orders);
    println!("m = {}", sd.m);
    println!("v = {}", sd.v);
    println!("verification: {}", if ok { "ok" } else { "FAILED" });
    if !ok {
        return Err(Error::Verification("standard decomposition".into()));
    }
    Ok(Verdict::Positive)
}

fn parse_certificate(text: &str) -> Result<Vec<Element>> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let perr = |msg: &str| Error::Parse {
            line: n + 1,
            msg: msg.into(),
        };
        let (i, enc) = line.split_once("->").ok_or_else(|| perr("expected `index -> encoding`"))?;
        let i: usize = i.trim().parse().map_err(|_| perr("bad generator index"))?;
        if i != out.len() {
            return Err(perr("generator indices must be 0, 1, 2, ..."));
        }
        out.push(Element::from_hex(enc.trim())?);
    }
    Ok(out)
}

fn iso(a: &Path, b: &Path, emit: Option<PathBuf>, check: Option<PathBuf>) -> Result<Verdict> {
    let g = load_group(a)?;
    let h = load_group(b)?;
    if let Some(path) = check {
        let images = parse_certificate(&read(&path)?)?;
        return if verify_images(g.as_ref(), h.as_ref(), &images)? {
            println!("certificate verified");
            Ok(Verdict::Positive)
        } else {
            println!("certificate REJECTED");
            Ok(Verdict::Negative)
        };
    }
    match group_isomorphism(g.as_ref(), h.as_ref())? {
        IsoOutcome::Isomorphic(iso) => {
            println!("ISOMORPHIC");
            println!("k = {}", iso.k);
            println!("verification: ok");
            if let Some(path) = emit {
                let lines: String = iso
                    .gen_images
                    .iter()
                    .enumerate()
                    .map(|(i, x)| format!("{i} -> {x}\n"))
                    .collect();
                fs::write(&path, lines)?;
            }
            Ok(Verdict::Positive)
        }
        IsoOutcome::NotIsomorphic(reason) => {
            println!("NOT-ISOMORPHIC: {reason}");
            Ok(Verdict::Negative)
        }
    }
}

fn setdlog(path: &Path) -> Result<Verdict> {
    let blocks = parse_instance(&read(path)?)?;
    let s: Vec<_> = blocks.iter().map(|b| b.s.clone()).collect();
    let t: Vec<_> = blocks.iter().map(|b| b.t.clone()).collect();
    match set_discrete_log(&s, &t)? {
        Some(c) => {
            println!("m = {}", c.m);
            println!("coset = {} * <{}>", c.rep, join(&c.gens));
            println!("members = {}", join(&c.members()));
            Ok(Verdict::Positive)
        }
        None => {
            println!("NONE");
            Ok(Verdict::Negative)
        }
    }
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

fn conjlog(path: &Path) -> Result<Verdict> {
    let inst = ConjLogInstance::parse(&read(path)?)?;
    match dlog_up_to_conjugacy(&inst)? {
        Some(sol) => {
            println!("k = {}", sol.k);
            println!("all k = {}", join(&sol.coset.exponents(sol.scale)));
            for (i, x) in sol.xs.iter().enumerate() {
                println!("# X_{i}");
                print!("{}", matrix_to_text(x));
            }
            Ok(Verdict::Positive)
        }
        None => {
            println!("NONE");
            Ok(Verdict::Negative)
        }
    }
}

fn matform(path: &Path) -> Result<Verdict> {
    for (i, m) in parse_matrices(&read(path)?)?.iter().enumerate() {
        println!("# matrix {i}");
        let inv = invariant_factors(m)?;
        for f in inv.factors() {
            println!("invariant factor {}", join(f.coeffs()));
        }
        println!("order {}", mat_order(m)?);
        println!("rational normal form");
        print!("{}", matrix_to_text(&rational_normal_form(m)?));
        for ((d, l), roots) in elementary_divisors(m)?.iter() {
            println!("bucket d={d} l={l} size={}", roots.len());
        }
    }
    Ok(Verdict::Positive)
}

fn quantum_demo(a: u64, n: u64, seed: u64) -> Result<Verdict> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trace = Vec::new();
    let r = shor_order_traced(a, n, DEFAULT_RETRIES, &mut rng, &mut trace);
    for (i, t) in trace.iter().enumerate() {
        println!(
            "trial {i}: Q = {}, collapsed to {} states from x0 = {}, measured {}, denominators {}",
            t.register,
            t.support,
            t.x0,
            t.measured,
            join(&t.denominators)
        );
    }
    let r = r?;
    println!("order of {a} mod {n} = {r}");

    // hidden subgroup <(2, 3)> of Z4 x Z6
    let orders = [4u64, 6];
    let labels: Vec<usize> = (0..24)
        .map(|idx| {
            let (x, y) = ((idx / 6) as u64, (idx % 6) as u64);
            // coset representative with first coordinate below 2
            let t = x / 2;
            (((x + 4 - 2 * t) % 4) * 6 + (y + 6 - 3 * t) % 6) as usize
        })
        .collect();
    let k = hsp_solve(&orders, &labels, &mut rng)?;
    println!("hidden subgroup of Z4 x Z6 generated by {k:?}");
    Ok(Verdict::Positive)
}

fn selftest_cmd(only: Option<usize>, inject_fault: bool, seed: u64) -> Result<Verdict> {
    let opts = Options { seed, inject_fault };
    let reports = match only {
        Some(id) => vec![selftest::run(id, opts)],
        None => selftest::run_all(opts),
    };
    for r in &reports {
        println!("{r}");
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    println!("{} passed, {failed} failed", reports.len() - failed);
    Ok(if failed == 0 { Verdict::Positive } else { Verdict::Negative })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (name, result) = match cli.cmd {
        Cmd::Gen {
            abelian,
            m,
            count,
            sampler,
            out,
        } => ("gen", gen(abelian, m, count, &sampler, out, cli.seed)),
        Cmd::Decompose { group } => ("decompose", decompose(&group)),
        Cmd::Iso { a, b, emit, check } => ("iso", iso(&a, &b, emit, check)),
        Cmd::Setdlog { file } => ("setdlog", setdlog(&file)),
        Cmd::Conjlog { file } => ("conjlog", conjlog(&file)),
        Cmd::Matform { file } => ("matform", matform(&file)),
        Cmd::QuantumDemo { a, n } => ("quantum-demo", quantum_demo(a, n, cli.seed)),
        Cmd::Selftest { only, inject_fault } => ("selftest", selftest_cmd(only, inject_fault, cli.seed)),
    };
    let ms = start.elapsed().as_millis();
    match result {
        Ok(Verdict::Positive) => {
            eprintln!("# {name}: ok in {ms} ms");
            ExitCode::SUCCESS
        }
        Ok(Verdict::Negative) => {
            eprintln!("# {name}: negative in {ms} ms");
            ExitCode::from(1)
        }
        Err(e) if e.is_input_error() => {
            if name == "iso" {
                println!("FAIL: {e}");
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            if name == "iso" {
                println!("FAIL: {e}");
            }
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
