//! One PASS/FAIL line per acceptance criterion.

use ihall::bar::piece::{grades_up_to, hat_piece};
use ihall::bar::dcb::check_plain_triangularity;
use ihall::bar::{dcb_plain, DcbSolver};
use ihall::ctx::Ctx;
use ihall::hall::engine::DEFAULT_PRIMES;
use ihall::ihall::{verify_presentation, IHallAlgebra, IHallElt, IKey};
use ihall::io::cache::CacheStore;
use ihall::laurent::LaurentHalf;
use ihall::modfq::classes::classes_of_dim;
use ihall::modfq::count::DEFAULT_BUDGET;
use ihall::modfq::ext::check_riedtmann_peng;
use ihall::modfq::ModClass;
use ihall::quiver::{IQuiver, RawQuiver};
use ihall::report::Report;
use ihall::symmetry::fixedq::{FixedElt, FixedQAlgebra};
use ihall::symmetry::fourier::{fourier_check, Fourier};
use ihall::symmetry::pbw::check_pbw;
use ihall::verify::gamma_suite;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::sync::Arc;
use std::time::Instant;

type Outcome = Result<(), String>;

fn ctx(v: &[&str], a: &[(&str, &str)], t: &[(&str, &str)]) -> Arc<Ctx> {
    Ctx::new(IQuiver::validate(&RawQuiver::new(v, a, t)).unwrap()).unwrap()
}

fn a1() -> Arc<Ctx> {
    ctx(&["1"], &[], &[])
}
fn a2() -> Arc<Ctx> {
    ctx(&["1", "2"], &[("1", "2")], &[])
}
fn a2_op() -> Arc<Ctx> {
    ctx(&["1", "2"], &[("2", "1")], &[])
}
fn a3_outer() -> Arc<Ctx> {
    ctx(&["1", "2", "3"], &[("1", "2"), ("3", "2")], &[("1", "3")])
}
fn a3_linear() -> Arc<Ctx> {
    ctx(&["1", "2", "3"], &[("1", "2"), ("2", "3")], &[])
}
fn a1_double() -> Arc<Ctx> {
    ctx(&["1", "2"], &[], &[("1", "2")])
}

fn alg(c: Arc<Ctx>) -> Arc<IHallAlgebra> {
    IHallAlgebra::from_ctx(c).unwrap()
}

fn report(r: ihall::Result<Report>) -> Outcome {
    let r = r.map_err(|e| e.to_string())?;
    let out = match r.failures().next() {
        None => Ok(()),
        Some(f) => Err(format!("{}: {} ({} of {} checks failed)", f.name, f.detail, r.failures().count(), r.entries.len())),
    };
    out
}

fn rank_one_identity() -> Outcome {
    let c = a1();
    let h = alg(c.clone());
    let s = |m: u32| IHallElt::u(&c, &ModClass(vec![m]));
    for a in 1..=5i64 {
        let lhs = h.iproduct(&s(1), &s(a as u32)).map_err(|e| e.to_string())?;
        let tail = h.iproduct(&s(a as u32 - 1), &IHallElt::k(&c, &[1])).map_err(|e| e.to_string())?;
        let rhs = s(a as u32 + 1).scale(&LaurentHalf::v_pow(-a)).add(&tail.scale(&(&LaurentHalf::v_pow(a) - &LaurentHalf::v_pow(-a))));
        if lhs != rhs {
            return Err(format!("a = {a}: residual {}", lhs.sub(&rhs).display(&c)));
        }
    }
    Ok(())
}

fn presentation() -> Outcome {
    for (name, c) in [("split A1", a1()), ("split A2", a2()), ("split A2 reversed", a2_op()), ("A3 with (1 3)", a3_outer()), ("A1 double", a1_double())] {
        report(Ok(verify_presentation(&alg(c)))).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(())
}

fn plain_a1() -> Outcome {
    let h = alg(a1());
    for m in 0..=6u32 {
        let got = dcb_plain(h.hall(), &[m as i64]).map_err(|e| e.to_string())?;
        let l = ModClass(vec![m]);
        let want = ihall::lin::Lin::term(l.clone(), LaurentHalf::v_half_pow(-((m * m) as i64)));
        if got.len() != 1 || got.get(&l) != Some(&want) {
            return Err(format!("m = {m}: got {got:?}"));
        }
    }
    Ok(())
}

fn dcb_box(c: Arc<Ctx>, side: i64) -> Outcome {
    let s = DcbSolver::new(alg(c.clone()));
    for g in grades_up_to(&vec![side; c.n()]) {
        report(s.check_piece(&g)).map_err(|e| format!("grade {g:?}: {e}"))?;
    }
    Ok(())
}

fn dcb_contract() -> Outcome {
    dcb_box(a2(), 4).map_err(|e| format!("split A2: {e}"))?;
    dcb_box(a3_outer(), 4).map_err(|e| format!("A3 with (1 3): {e}"))
}

fn triangularity() -> Outcome {
    for (name, c, side) in [("split A1", a1(), 6), ("split A2", a2(), 4), ("A3 with (1 3)", a3_outer(), 4), ("A1 double", a1_double(), 4)] {
        let s = DcbSolver::new(alg(c.clone()));
        for g in grades_up_to(&vec![side; c.n()]) {
            report(s.check_triangularity(&g)).map_err(|e| format!("{name} {g:?}: {e}"))?;
        }
    }
    let h = alg(a2());
    for g in grades_up_to(&[3, 3]) {
        report(check_plain_triangularity(h.hall(), &g)).map_err(|e| format!("plain A2 {g:?}: {e}"))?;
    }
    Ok(())
}

fn reflection() -> Outcome {
    report(gamma_suite(&alg(a2()), 1, &[3, 3])).map_err(|e| format!("split A2 at 2: {e}"))?;
    report(gamma_suite(&alg(a3_outer()), 1, &[2, 2, 2])).map_err(|e| format!("A3 with (1 3) at 2: {e}"))
}

fn fourier() -> Outcome {
    // the two rank-two examples, in the basis u_M
    for p in [2u64, 3] {
        let c = a2();
        let f = Fourier::new(c.clone(), &[(0, 1)], p).map_err(|e| e.to_string())?;
        let d = f.dst.clone();
        let split = ModClass(vec![1, 1, 0]);
        let m = ModClass::single(3, c.root_index(&[1, 1]).unwrap(), 1);
        let split2 = ModClass(vec![1, 1, 0]);
        let m2 = ModClass::single(3, d.root_index(&[1, 1]).unwrap(), 1);
        let h = ihall::laurent::QSqrt::sqrt_pow(p, -1);
        let int = |k: i64| ihall::laurent::QSqrt::from_int(p, &ihall::int::Int::from(k));
        let want1 = [(split2.clone(), h.clone()), (m2.clone(), &h * &int(p as i64 - 1))].into();
        let want2 = [(split2, h.clone()), (m2, &h * &int(-1))].into();
        if f.image_class(&split).map_err(|e| e.to_string())? != want1 || f.image_class(&m).map_err(|e| e.to_string())? != want2 {
            return Err(format!("rank-two examples differ at p = {p}"));
        }
    }
    for (name, c, arrows) in [("split A2", a2(), vec![(0, 1)]), ("A3 with (1 3)", a3_outer(), vec![(0, 1), (2, 1)]), ("split A3", a3_linear(), vec![(0, 1), (1, 2)])] {
        for p in [2, 3] {
            let f = Fourier::new(c.clone(), &arrows, p).map_err(|e| e.to_string())?;
            report(fourier_check(&f, &vec![2; c.n()])).map_err(|e| format!("{name} at {p}: {e}"))?;
        }
    }
    Ok(())
}

fn hall_polynomials() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for (name, c, max) in [("A2", a2(), 3), ("A3 with (1 3)", a3_outer(), 2)] {
        let path = dir.path().join(format!("{}.json", c.q.hash()));
        let mut st = CacheStore::open(&path, &c, &DEFAULT_PRIMES).map_err(|e| e.to_string())?;
        let eng = alg(c.clone());
        for dy in grades_up_to(&vec![max; c.n()]) {
            if dy.iter().sum::<i64>() > max {
                continue;
            }
            for dz in grades_up_to(&dy) {
                let dx: Vec<i64> = dy.iter().zip(&dz).map(|(a, b)| a - b).collect();
                for y in classes_of_dim(&c, &dy) {
                    for x in classes_of_dim(&c, &dx) {
                        for z in classes_of_dim(&c, &dz) {
                            let h = st.hall_poly(&c, &x, &z, &y, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
                            let structural = eng.eng().hall_poly(&x, &z, &y).map_err(|e| e.to_string())?;
                            if h.poly != structural {
                                return Err(format!("{name}: F^{y}_{{{x},{z}}} fitted {} but structure constants give {structural}", h.poly));
                            }
                        }
                    }
                }
            }
        }
        st.save().map_err(|e| e.to_string())?;
        let st = CacheStore::open(&path, &c, &DEFAULT_PRIMES).map_err(|e| e.to_string())?;
        st.spot_check(&c, 2, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        report(st.check_held_out(&c, &[17, 19], DEFAULT_BUDGET)).map_err(|e| format!("{name}: {e}"))?;
    }
    for p in [2, 3] {
        report(check_riedtmann_peng(&a2(), 3, p, DEFAULT_BUDGET)).map_err(|e| format!("at {p}: {e}"))?;
    }
    Ok(())
}

fn pbw() -> Outcome {
    report(check_pbw(&alg(a3_outer()), &[2, 2, 2]))
}

fn specialization() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for (name, c, side) in [("split A1", a1(), 4), ("split A2", a2(), 2), ("A3 with (1 3)", a3_outer(), 2), ("A1 double", a1_double(), 2)] {
        let h = alg(c.clone());
        let fq = FixedQAlgebra::new(c.clone(), 2, DEFAULT_BUDGET);
        let keys: Vec<IKey> = grades_up_to(&vec![side; c.n()]).iter().flat_map(|g| hat_piece(&h, g).basis).collect();
        for _ in 0..100 {
            let x = &keys[rng.gen_range(0..keys.len())];
            let y = &keys[rng.gen_range(0..keys.len())];
            let generic = h.iproduct(&IHallElt::basis(x.0.clone(), x.1.clone()), &IHallElt::basis(y.0.clone(), y.1.clone())).map_err(|e| e.to_string())?;
            let want = FixedElt::from_generic(&generic, 2).map_err(|e| e.to_string())?;
            let got = fq.product(&FixedElt::basis(2, x.clone()), &FixedElt::basis(2, y.clone())).map_err(|e| e.to_string())?;
            if got != want {
                return Err(format!("{name}: {x:?} * {y:?}: counted {got}, generic {want}"));
            }
        }
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("rank-one product identity", rank_one_identity),
        ("presentation relations", presentation),
        ("plain dual canonical basis of A1", plain_a1),
        ("dual canonical basis contract", dcb_contract),
        ("bar triangularity", triangularity),
        ("reflection isomorphism", reflection),
        ("Fourier transform", fourier),
        ("Hall polynomial integrity", hall_polynomials),
        ("PBW basis", pbw),
        ("specialization coherence", specialization),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(()) => println!("PASS {:>2} {name} ({secs:.1}s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.1}s): {e}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
