use ihall::bar::{DcbSolver, IBar};
use ihall::ctx::Ctx;
use ihall::ihall::{IHallAlgebra, IHallElt};
use ihall::io::format::{element_from_json, element_to_json, DcbTable};
use ihall::modfq::ModClass;
use ihall::quiver::{IQuiver, RawQuiver};
use ihall::symmetry::fourier::Fourier;
use ihall::symmetry::Reflection;
use ihall::verify::{run_suite, Suite, SuiteOptions};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use std::sync::Arc;

fn err(e: ihall::error::Error) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

/// A Dynkin quiver with an involution.
#[pyclass(frozen)]
struct Quiver {
    ctx: Arc<Ctx>,
}

#[pymethods]
impl Quiver {
    #[new]
    #[pyo3(signature = (vertices, arrows, involution = Vec::new()))]
    fn new(vertices: Vec<String>, arrows: Vec<(String, String)>, involution: Vec<(String, String)>) -> PyResult<Quiver> {
        let raw = RawQuiver { vertices, arrows, involution };
        Ok(Quiver { ctx: Ctx::new(IQuiver::validate(&raw).map_err(err)?).map_err(err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Quiver> {
        Ok(Quiver { ctx: Ctx::new(IQuiver::validate(&RawQuiver::from_json(text).map_err(err)?).map_err(err)?).map_err(err)? })
    }

    #[getter]
    fn n(&self) -> usize {
        self.ctx.n()
    }

    /// Positive roots as dimension vectors, in index order.
    #[getter]
    fn roots(&self) -> Vec<Vec<i64>> {
        self.ctx.roots.clone()
    }

    fn root_index(&self, root: Vec<i64>) -> Option<usize> {
        self.ctx.root_index(&root)
    }

    fn hash(&self) -> String {
        self.ctx.q.hash()
    }

    fn to_json(&self) -> String {
        self.ctx.q.canonical_json()
    }

    fn __repr__(&self) -> String {
        format!("Quiver({})", self.ctx.q.canonical_json())
    }
}

/// An element of an i-Hall algebra.
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
struct Element {
    ctx: Arc<Ctx>,
    x: IHallElt,
}

impl Element {
    fn same(&self, o: &Element) -> PyResult<()> {
        if self.ctx.q.hash() != o.ctx.q.hash() {
            return Err(PyValueError::new_err("elements belong to different quivers"));
        }
        Ok(())
    }
}

#[pymethods]
impl Element {
    fn __add__(&self, o: &Element) -> PyResult<Element> {
        self.same(o)?;
        Ok(Element { ctx: self.ctx.clone(), x: self.x.add(&o.x) })
    }

    fn __sub__(&self, o: &Element) -> PyResult<Element> {
        self.same(o)?;
        Ok(Element { ctx: self.ctx.clone(), x: self.x.sub(&o.x) })
    }

    fn __eq__(&self, o: &Element) -> bool {
        self.ctx.q.hash() == o.ctx.q.hash() && self.x == o.x
    }

    fn __len__(&self) -> usize {
        self.x.len()
    }

    fn is_zero(&self) -> bool {
        self.x.is_zero()
    }

    fn to_json(&self) -> String {
        element_to_json(&self.ctx, &self.x)
    }

    fn __str__(&self) -> String {
        self.x.display(&self.ctx)
    }

    fn __repr__(&self) -> String {
        format!("Element({})", self.x.display(&self.ctx))
    }
}

/// The i-Hall algebra of a quiver, with generic structure constants.
#[pyclass(frozen)]
struct IHall {
    alg: Arc<IHallAlgebra>,
}

impl IHall {
    fn ctx(&self) -> &Arc<Ctx> {
        self.alg.ctx()
    }

    fn wrap(&self, x: IHallElt) -> Element {
        Element { ctx: self.ctx().clone(), x }
    }

    fn class(&self, mults: Vec<u32>) -> PyResult<ModClass> {
        if mults.len() != self.ctx().nroots() {
            return Err(PyValueError::new_err(format!("class needs {} multiplicities", self.ctx().nroots())));
        }
        Ok(ModClass(mults))
    }

    fn own(&self, x: &Element) -> PyResult<()> {
        if x.ctx.q.hash() != self.ctx().q.hash() {
            return Err(PyValueError::new_err("element belongs to another quiver"));
        }
        Ok(())
    }
}

#[pymethods]
impl IHall {
    #[new]
    fn new(q: &Quiver) -> PyResult<IHall> {
        Ok(IHall { alg: IHallAlgebra::from_ctx(q.ctx.clone()).map_err(err)? })
    }

    #[getter]
    fn quiver(&self) -> Quiver {
        Quiver { ctx: self.ctx().clone() }
    }

    fn one(&self) -> Element {
        self.wrap(IHallElt::one(self.ctx()))
    }

    /// `u_lambda`, with `lambda` given as multiplicities over root indices.
    fn u(&self, mults: Vec<u32>) -> PyResult<Element> {
        Ok(self.wrap(IHallElt::u(self.ctx(), &self.class(mults)?)))
    }

    fn k(&self, alpha: Vec<i64>) -> PyResult<Element> {
        if alpha.len() != self.ctx().n() {
            return Err(PyValueError::new_err(format!("K-exponent needs {} entries", self.ctx().n())));
        }
        Ok(self.wrap(IHallElt::k(self.ctx(), &alpha)))
    }

    fn product(&self, a: &Element, b: &Element) -> PyResult<Element> {
        self.own(a)?;
        self.own(b)?;
        Ok(self.wrap(self.alg.iproduct(&a.x, &b.x).map_err(err)?))
    }

    fn bar(&self, x: &Element) -> PyResult<Element> {
        self.own(x)?;
        Ok(self.wrap(IBar::new(self.alg.clone()).bar(&x.x).map_err(err)?))
    }

    fn element_from_json(&self, text: &str) -> PyResult<Element> {
        Ok(self.wrap(element_from_json(self.ctx(), text).map_err(err)?))
    }

    /// Dual canonical basis of one grade, as `(K-exponent, multiplicities, element)` rows.
    fn dcb(&self, grade: Vec<i64>) -> PyResult<Vec<(Vec<i64>, Vec<u32>, Element)>> {
        let piece = DcbSolver::new(self.alg.clone()).solve(&grade).map_err(err)?;
        let t = DcbTable::from_piece(self.ctx(), &piece);
        Ok(t.basis.into_iter().zip(t.elements).map(|((k, l), x)| (k, l.0, self.wrap(x))).collect())
    }

    /// Image under the reflection at the sink named `sink`.
    fn reflect(&self, sink: &str, x: &Element) -> PyResult<Element> {
        self.own(x)?;
        let l = self.ctx().q.index_of(sink).ok_or_else(|| PyValueError::new_err(format!("no vertex named {sink:?}")))?;
        let g = Reflection::new(self.alg.clone(), l).map_err(err)?;
        Ok(Element { ctx: g.dst.ctx().clone(), x: g.apply(&x.x) })
    }

    /// Runs a property suite up to a grade bound; returns `(passed, total, failures)`.
    #[pyo3(signature = (suite, bound, sink = None))]
    fn verify(&self, suite: &str, bound: Vec<i64>, sink: Option<&str>) -> PyResult<(usize, usize, Vec<String>)> {
        let suite: Suite = suite.parse().map_err(err)?;
        let mut opt = SuiteOptions::new(bound);
        if let Some(s) = sink {
            opt.sink = Some(self.ctx().q.index_of(s).ok_or_else(|| PyValueError::new_err(format!("no vertex named {s:?}")))?);
        }
        let rep = run_suite(&self.alg, suite, &opt).map_err(err)?;
        let failures: Vec<String> = rep.failures().map(|f| format!("{}: {}", f.name, f.detail)).collect();
        Ok((rep.entries.len() - failures.len(), rep.entries.len(), failures))
    }
}

/// Fourier image of `u_lambda` at the prime `p`, reversing `arrows` (all by
/// default). Returns `(multiplicities on the reversed quiver, coefficient)` pairs.
#[pyfunction]
#[pyo3(signature = (q, mults, p, arrows = None))]
fn fourier_image(q: &Quiver, mults: Vec<u32>, p: u64, arrows: Option<Vec<(String, String)>>) -> PyResult<Vec<(Vec<u32>, String)>> {
    let ctx = &q.ctx;
    let arr = match arrows {
        None => ctx.q.arrows().to_vec(),
        Some(a) => a
            .iter()
            .map(|(s, t)| match (ctx.q.index_of(s), ctx.q.index_of(t)) {
                (Some(s), Some(t)) => Ok((s, t)),
                _ => Err(PyValueError::new_err(format!("unknown arrow {s}-{t}"))),
            })
            .collect::<PyResult<_>>()?,
    };
    if mults.len() != ctx.nroots() {
        return Err(PyValueError::new_err(format!("class needs {} multiplicities", ctx.nroots())));
    }
    let f = Fourier::new(ctx.clone(), &arr, p).map_err(err)?;
    let img = f.image_class(&ModClass(mults)).map_err(err)?;
    Ok(img.iter().map(|(t, c)| (t.0.clone(), c.to_string())).collect())
}

#[pymodule]
fn ihall_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Quiver>()?;
    m.add_class::<Element>()?;
    m.add_class::<IHall>()?;
    m.add_function(wrap_pyfunction!(fourier_image, m)?)?;
    Ok(())
}
