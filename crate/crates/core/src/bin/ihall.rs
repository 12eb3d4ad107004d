use clap::{Args, Parser, Subcommand};
use ihall::bar::piece::plain_order;
use ihall::bar::{dcb_plain, DcbSolver};
use ihall::ctx::Ctx;
use ihall::error::{Error, Result};
use ihall::hall::engine::{Engine, DEFAULT_PRIMES};
use ihall::hall::plain::HallAlgebra;
use ihall::ihall::IHallAlgebra;
use ihall::io::cache::CacheStore;
use ihall::io::format::{element_from_json, element_to_json, DcbTable};
use ihall::modfq::classes::classes_of_dim;
use ihall::modfq::count::DEFAULT_BUDGET;
use ihall::modfq::ModClass;
use ihall::quiver::{i_admissible_sequence, sequence_roots, IQuiver, RawQuiver};
use ihall::symmetry::fourier::Fourier;
use ihall::symmetry::Reflection;
use ihall::verify::{run_suite, Suite, SuiteOptions};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

/// Hall and i-Hall algebras of Dynkin quivers.
#[derive(Parser, Debug)]
#[command(name = "ihall", version)]
struct Cli {
    /// Primes used to fit Hall polynomials (comma separated).
    #[arg(long, global = true, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    /// Maximum number of candidates enumerated by one count.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Re-count every cached polynomial at the first prime before use.
    #[arg(long, global = true)]
    cache_spot_check: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct QuiverArg {
    /// Quiver file: {"vertices": [...], "arrows": [[s, t], ...], "involution": [[a, b], ...]}.
    quiver: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Positive roots, admissible order and admissible sink sequence.
    Roots(QuiverArg),
    /// Hall polynomials F^Y_{XZ}; classes are multiplicity lists over root indices.
    Hallpoly {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long, value_delimiter = ',')]
        x: Option<Vec<u32>>,
        #[arg(long, value_delimiter = ',')]
        z: Option<Vec<u32>>,
        #[arg(long, value_delimiter = ',')]
        y: Option<Vec<u32>>,
        /// Tabulate every triple whose middle term has this dimension vector.
        #[arg(long, value_delimiter = ',')]
        grade: Option<Vec<i64>>,
    },
    /// Product of two element files.
    Iprod {
        #[command(flatten)]
        q: QuiverArg,
        x: PathBuf,
        y: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Dual canonical basis of one grade.
    Dcb {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long, value_delimiter = ',', required = true)]
        grade: Vec<i64>,
        /// Plain Hall algebra instead of the i-Hall algebra.
        #[arg(long)]
        plain: bool,
        #[arg(long)]
        json: bool,
    },
    /// Reflected quiver at a sink, and the image of an element file under it.
    Reflect {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long)]
        sink: String,
        element: Option<PathBuf>,
    },
    /// Fourier images of all classes of one dimension vector at a prime.
    Fourier {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long, value_delimiter = ',', required = true)]
        grade: Vec<i64>,
        #[arg(long, default_value_t = 2)]
        prime: u64,
        /// Arrows to reverse as s-t pairs of vertex names; default all.
        #[arg(long, value_delimiter = ',')]
        reverse: Vec<String>,
    },
    /// Runs a property suite; exit status 1 on any failure.
    Verify {
        #[command(flatten)]
        q: QuiverArg,
        /// relations | gamma | fourier | pbw | bar
        suite: String,
        #[arg(long, value_delimiter = ',')]
        grade: Option<Vec<i64>>,
        #[arg(long)]
        sink: Option<String>,
        #[arg(long, value_delimiter = ',')]
        reverse: Vec<String>,
        #[arg(long, value_delimiter = ',', default_values_t = [2u64, 3])]
        fourier_primes: Vec<u64>,
        #[arg(long)]
        json: bool,
    },
}

fn load_quiver(q: &QuiverArg) -> Result<Arc<Ctx>> {
    let text = std::fs::read_to_string(&q.quiver)?;
    Ctx::new(IQuiver::validate(&RawQuiver::from_json(&text)?)?)
}

fn vertex(ctx: &Ctx, name: &str) -> Result<usize> {
    ctx.q.index_of(name).ok_or_else(|| Error::InvalidInput(format!("no vertex named {name:?}")))
}

fn arrows(ctx: &Ctx, specs: &[String]) -> Result<Vec<(usize, usize)>> {
    specs
        .iter()
        .map(|s| {
            let (a, b) = s.split_once('-').ok_or_else(|| Error::InvalidInput(format!("arrow {s:?} should look like 1-2")))?;
            Ok((vertex(ctx, a)?, vertex(ctx, b)?))
        })
        .collect()
}

fn class(ctx: &Ctx, v: &[u32]) -> Result<ModClass> {
    if v.len() != ctx.nroots() {
        return Err(Error::InvalidInput(format!("class needs {} multiplicities, got {}", ctx.nroots(), v.len())));
    }
    Ok(ModClass(v.to_vec()))
}

fn grade(ctx: &Ctx, g: &[i64]) -> Result<Vec<i64>> {
    if g.len() != ctx.n() || g.iter().any(|&x| x < 0) {
        return Err(Error::InvalidInput(format!("grade must have {} nonnegative entries", ctx.n())));
    }
    Ok(g.to_vec())
}

fn algebra(ctx: Arc<Ctx>, cli: &Cli) -> Result<Arc<IHallAlgebra>> {
    let primes = cli.primes.clone().unwrap_or(DEFAULT_PRIMES.to_vec());
    Ok(IHallAlgebra::new(HallAlgebra::new(Engine::with_primes(ctx, &primes, cli.budget)?)))
}

fn write_out(text: &str, path: Option<&PathBuf>) -> Result<()> {
    match path {
        Some(p) => Ok(std::fs::write(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.cmd {
        Cmd::Roots(q) => {
            let ctx = load_quiver(q)?;
            let name = |i: usize| ctx.q.name(i).to_string();
            println!("vertices: {}", (0..ctx.n()).map(name).collect::<Vec<_>>().join(" "));
            println!("positive roots ({}):", ctx.nroots());
            for (i, r) in ctx.roots.iter().enumerate() {
                println!("  {i}: {r:?}");
            }
            println!("admissible order: {:?}", ctx.adm);
            let seq = i_admissible_sequence(&ctx.q);
            println!("sink sequence: {}", seq.iter().map(|&i| name(i)).collect::<Vec<_>>().join(" "));
            println!("root sequence: {:?}", sequence_roots(&ctx.q, &seq));
            Ok(true)
        }
        Cmd::Hallpoly { q, x, z, y, grade: g } => {
            let ctx = load_quiver(q)?;
            let primes = cli.primes.clone().unwrap_or(DEFAULT_PRIMES.to_vec());
            let mut store = match CacheStore::env_path() {
                Some(p) => Some(CacheStore::open(p, &ctx, &primes)?),
                None => None,
            };
            if cli.cache_spot_check {
                if let Some(s) = &store {
                    s.spot_check(&ctx, primes[0], cli.budget)?;
                }
            }
            let triples: Vec<(ModClass, ModClass, ModClass)> = match (x, z, y, g) {
                (Some(x), Some(z), Some(y), _) => vec![(class(&ctx, x)?, class(&ctx, z)?, class(&ctx, y)?)],
                (None, None, None, Some(g)) => {
                    let g = grade(&ctx, g)?;
                    let mut out = Vec::new();
                    for dz in ihall::bar::piece::grades_up_to(&g) {
                        let dx: Vec<i64> = g.iter().zip(&dz).map(|(a, b)| a - b).collect();
                        for yc in classes_of_dim(&ctx, &g) {
                            for xc in classes_of_dim(&ctx, &dx) {
                                for zc in classes_of_dim(&ctx, &dz) {
                                    out.push((xc.clone(), zc.clone(), yc.clone()));
                                }
                            }
                        }
                    }
                    out
                }
                _ => return Err(Error::InvalidInput("give --x, --z and --y, or --grade".into())),
            };
            for (xc, zc, yc) in triples {
                let h = match &mut store {
                    Some(s) => s.hall_poly(&ctx, &xc, &zc, &yc, cli.budget)?,
                    None => ihall::hall::interp::interpolate_hall_polynomial(&ctx, &xc, &zc, &yc, &primes, cli.budget)?,
                };
                if !h.poly.is_zero() {
                    println!("F^{yc}_{{{xc},{zc}}} = {}    (primes {:?})", h.poly, h.nodes);
                }
            }
            if let Some(s) = &mut store {
                s.save()?;
            }
            Ok(true)
        }
        Cmd::Iprod { q, x, y, output } => {
            let ctx = load_quiver(q)?;
            let alg = algebra(ctx.clone(), cli)?;
            let a = element_from_json(&ctx, &std::fs::read_to_string(x)?)?;
            let b = element_from_json(&ctx, &std::fs::read_to_string(y)?)?;
            write_out(&element_to_json(&ctx, &alg.iproduct(&a, &b)?), output.as_ref())?;
            Ok(true)
        }
        Cmd::Dcb { q, grade: g, plain, json } => {
            let ctx = load_quiver(q)?;
            let g = grade(&ctx, g)?;
            let alg = algebra(ctx.clone(), cli)?;
            let table = if *plain {
                let elts = dcb_plain(alg.hall(), &g)?;
                let order = plain_order(&ctx, &elts.keys().cloned().collect::<Vec<_>>(), false);
                DcbTable::from_plain(&ctx, &g, &order, &elts)
            } else {
                DcbTable::from_piece(&ctx, &*DcbSolver::new(alg).solve(&g)?)
            };
            print!("{}", if *json { table.to_json(&ctx) } else { table.to_text(&ctx) });
            Ok(true)
        }
        Cmd::Reflect { q, sink, element } => {
            let ctx = load_quiver(q)?;
            let l = vertex(&ctx, sink)?;
            let alg = algebra(ctx.clone(), cli)?;
            let g = Reflection::new(alg, l)?;
            let dctx = g.dst.ctx();
            match element {
                None => println!("{}", dctx.q.canonical_json()),
                Some(p) => {
                    let x = element_from_json(&ctx, &std::fs::read_to_string(p)?)?;
                    print!("{}", element_to_json(dctx, &g.apply(&x)));
                }
            }
            Ok(true)
        }
        Cmd::Fourier { q, grade: g, prime, reverse } => {
            let ctx = load_quiver(q)?;
            let g = grade(&ctx, g)?;
            let arr = if reverse.is_empty() { ctx.q.arrows().to_vec() } else { arrows(&ctx, reverse)? };
            let f = Fourier::new(ctx.clone(), &arr, *prime)?;
            println!("target quiver: {}", f.dst.q.canonical_json());
            for lam in classes_of_dim(&ctx, &g) {
                let img = f.image_class(&lam)?;
                let terms: Vec<String> = img.iter().map(|(t, c)| format!("({c}) u'{t}")).collect();
                println!("Phi(u{lam}) = {}", if terms.is_empty() { "0".into() } else { terms.join(" + ") });
            }
            Ok(true)
        }
        Cmd::Verify { q, suite, grade: g, sink, reverse, fourier_primes, json } => {
            let ctx = load_quiver(q)?;
            let suite: Suite = suite.parse()?;
            let bound = match g {
                Some(g) => grade(&ctx, g)?,
                None => vec![1; ctx.n()],
            };
            let mut opt = SuiteOptions::new(bound);
            opt.sink = sink.as_deref().map(|s| vertex(&ctx, s)).transpose()?;
            opt.reversed = arrows(&ctx, reverse)?;
            opt.fourier_primes = fourier_primes.clone();
            opt.budget = cli.budget;
            let alg = algebra(ctx.clone(), cli)?;
            let rep = run_suite(&alg, suite, &opt)?;
            if *json {
                println!("{}", rep.to_json());
            } else {
                print!("{}", rep.to_text());
            }
            Ok(rep.all_passed())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
