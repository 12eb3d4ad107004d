//! Named property suites shared by the command line and the tests.

use crate::bar::piece::grades_up_to;
use crate::bar::{DcbSolver, IBar};
use crate::error::{Error, Result};
use crate::ihall::{verify_presentation, IHallAlgebra, IHallElt};
use crate::modfq::count::DEFAULT_BUDGET;
use crate::quiver::DimVec;
use crate::report::Report;
use crate::symmetry::braid::braid_diagram_check;
use crate::symmetry::fourier::{fourier_check, Fourier};
use crate::symmetry::pbw::check_pbw;
use crate::symmetry::Reflection;
use std::str::FromStr;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Relations,
    Gamma,
    Fourier,
    Pbw,
    Bar,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        Ok(match s {
            "relations" => Suite::Relations,
            "gamma" => Suite::Gamma,
            "fourier" => Suite::Fourier,
            "pbw" => Suite::Pbw,
            "bar" => Suite::Bar,
            _ => return Err(Error::InvalidInput(format!("unknown suite {s:?}; expected relations, gamma, fourier, pbw or bar"))),
        })
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub bound: DimVec,
    /// Sink for the reflection suite.
    pub sink: Option<usize>,
    /// Arrows reversed by the Fourier suite; empty means all.
    pub reversed: Vec<(usize, usize)>,
    pub fourier_primes: Vec<u64>,
    pub budget: u64,
}

impl SuiteOptions {
    pub fn new(bound: DimVec) -> SuiteOptions {
        SuiteOptions { bound, sink: None, reversed: Vec::new(), fourier_primes: vec![2, 3], budget: DEFAULT_BUDGET }
    }
}

/// `bar` is an involution, `bar(K_a <> U_l) - K_a <> U_l` is triangular, and
/// the dual canonical basis meets its contract, on every grade up to the bound.
pub fn bar_suite(alg: &Arc<IHallAlgebra>, bound: &[i64]) -> Result<Report> {
    let ibar = IBar::new(alg.clone());
    let solver = DcbSolver::new(alg.clone());
    let mut rep = Report::new("bar involution and dual canonical basis");
    for g in grades_up_to(bound) {
        for (a, l) in crate::bar::piece::hat_piece(alg, &g).basis {
            let x = IHallElt::basis(a.clone(), l.clone());
            let bb = ibar.bar(&ibar.bar(&x)?)?;
            rep.push(format!("bar bar K{a:?} u{l}"), bb == x, format!("residual {}", bb.sub(&x).display(alg.ctx())));
        }
        rep.extend(solver.check_triangularity(&g)?);
        rep.extend(solver.check_piece(&g)?);
    }
    Ok(rep)
}

/// `Gamma_l`: homomorphism, bar, basis and dual canonical basis checks, plus
/// the braid operator diagram.
pub fn gamma_suite(alg: &Arc<IHallAlgebra>, l: usize, bound: &[i64]) -> Result<Report> {
    let g = Reflection::new(alg.clone(), l)?;
    let mut rep = Report::new(&format!("reflection at {}", alg.ctx().q.name(l)));
    rep.extend(g.check_homomorphism(bound)?);
    rep.extend(g.check_bar(&IBar::new(g.src.clone()), &IBar::new(g.dst.clone()), bound)?);
    rep.extend(g.check_basis(bound));
    rep.extend(g.check_dcb(&DcbSolver::new(g.src.clone()), &DcbSolver::new(g.dst.clone()), bound)?);
    rep.extend(braid_diagram_check(&g)?);
    Ok(rep)
}

pub fn run_suite(alg: &Arc<IHallAlgebra>, suite: Suite, opt: &SuiteOptions) -> Result<Report> {
    let ctx = alg.ctx();
    match suite {
        Suite::Relations => Ok(verify_presentation(alg)),
        Suite::Bar => bar_suite(alg, &opt.bound),
        Suite::Pbw => check_pbw(alg, &opt.bound),
        Suite::Gamma => {
            let l = match opt.sink {
                Some(l) => l,
                None => (0..ctx.n()).find(|&l| ctx.q.is_sink(l)).ok_or_else(|| Error::InvalidInput("quiver has no sink".into()))?,
            };
            gamma_suite(alg, l, &opt.bound)
        }
        Suite::Fourier => {
            let arrows = if opt.reversed.is_empty() { ctx.q.arrows().to_vec() } else { opt.reversed.clone() };
            let mut rep = Report::new("Fourier transform");
            for &p in &opt.fourier_primes {
                rep.extend(fourier_check(&Fourier::new(ctx.clone(), &arrows, p)?, &opt.bound)?);
            }
            Ok(rep)
        }
    }
}
