//! Python bindings: load `.cat` modules, check laws, complete monoidal
//! structure onto skeletons, take Day convolutions, and cross-validate the
//! two completions, all through the same code paths as the CLI.

use std::sync::Arc;

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use moncat_core::day::{compare_day_vs_transport, day_tensor, representability_witness, CompletionError};
use moncat_core::dsl::{self, ElabError};
use moncat_core::json::Artifact;
use moncat_core::laxmon::is_strong_monoidal;
use moncat_core::monoidal::check_monoidal_laws;
use moncat_core::presheaf::{yoneda, Presheaf};
use moncat_core::transport::{transport_monoidal, TransportedMonoidal};
use moncat_core::{Bounds, FinCat, MonoidalCategory};

create_exception!(moncat, LawError, PyException, "A category law failed to hold.");
create_exception!(moncat, WorkLimitError, PyException, "An enumeration exceeded the work budget.");

fn bounds() -> Bounds {
    Bounds::from_env()
}

fn violations(report: &moncat_core::LawReport) -> Vec<String> {
    report.violations.iter().map(|v| v.to_string()).collect()
}

/// A finite category with identity-carrying objects and a total composition
/// table. Morphism and object ids are dense integers.
#[pyclass(frozen)]
struct Category {
    cat: Arc<FinCat>,
}

#[pymethods]
impl Category {
    #[getter]
    fn n_objects(&self) -> usize {
        self.cat.n_objects()
    }

    #[getter]
    fn n_morphisms(&self) -> usize {
        self.cat.n_morphisms()
    }

    fn src(&self, f: usize) -> PyResult<usize> {
        self.bounds_check_mor(f)?;
        Ok(self.cat.src(f))
    }

    fn tgt(&self, f: usize) -> PyResult<usize> {
        self.bounds_check_mor(f)?;
        Ok(self.cat.tgt(f))
    }

    fn identity(&self, x: usize) -> PyResult<usize> {
        if x >= self.cat.n_objects() {
            return Err(PyValueError::new_err(format!("no object {x}")));
        }
        Ok(self.cat.identity(x))
    }

    /// f-then-g, or None when the endpoints do not meet.
    fn compose(&self, f: usize, g: usize) -> PyResult<Option<usize>> {
        self.bounds_check_mor(f)?;
        self.bounds_check_mor(g)?;
        Ok(self.cat.compose(f, g))
    }

    fn hom(&self, x: usize, y: usize) -> PyResult<Vec<usize>> {
        if x >= self.cat.n_objects() || y >= self.cat.n_objects() {
            return Err(PyValueError::new_err("object id out of range"));
        }
        Ok(self.cat.hom(x, y))
    }

    fn is_iso(&self, f: usize) -> PyResult<bool> {
        self.bounds_check_mor(f)?;
        Ok(self.cat.is_iso(f).is_some())
    }

    #[getter]
    fn is_skeletal(&self) -> bool {
        self.cat.is_skeletal()
    }

    /// All law violations, as messages; empty means the category is lawful.
    fn check(&self) -> Vec<String> {
        match self.cat.check_category_laws() {
            Ok(report) => violations(&report),
            Err(e) => vec![e.to_string()],
        }
    }

    /// The category in surface syntax, with synthesized names.
    fn canonical(&self) -> String {
        let elab = dsl::name_category(&self.cat, None);
        dsl::print_canonical("C", &elab)
    }

    fn to_json(&self) -> String {
        moncat_core::json::to_json(&Artifact::Category(Arc::clone(&self.cat)))
    }

    fn __repr__(&self) -> String {
        format!(
            "Category(objects={}, morphisms={})",
            self.cat.n_objects(),
            self.cat.n_morphisms()
        )
    }
}

impl Category {
    fn bounds_check_mor(&self, f: usize) -> PyResult<()> {
        if f >= self.cat.n_morphisms() {
            return Err(PyValueError::new_err(format!("no morphism {f}")));
        }
        Ok(())
    }
}

/// A monoidal structure over a [`Category`].
#[pyclass(frozen)]
struct Monoidal {
    mon: Arc<MonoidalCategory>,
}

#[pymethods]
impl Monoidal {
    #[getter]
    fn unit(&self) -> usize {
        self.mon.unit()
    }

    fn base(&self) -> Category {
        Category { cat: Arc::clone(self.mon.base()) }
    }

    fn tensor_obj(&self, x: usize, y: usize) -> PyResult<usize> {
        let n = self.mon.base().n_objects();
        if x >= n || y >= n {
            return Err(PyValueError::new_err("object id out of range"));
        }
        Ok(self.mon.tensor_obj(x, y))
    }

    fn tensor_mor(&self, f: usize, g: usize) -> PyResult<usize> {
        let m = self.mon.base().n_morphisms();
        if f >= m || g >= m {
            return Err(PyValueError::new_err("morphism id out of range"));
        }
        Ok(self.mon.tensor_mor(f, g))
    }

    fn check(&self) -> Vec<String> {
        violations(&check_monoidal_laws(&self.mon))
    }

    fn canonical(&self) -> String {
        let elab = dsl::name_category(self.mon.base(), Some(Arc::clone(&self.mon)));
        dsl::print_canonical("C", &elab)
    }

    fn to_json(&self) -> String {
        moncat_core::json::to_json(&Artifact::Monoidal(Arc::clone(&self.mon)))
    }

    fn __repr__(&self) -> String {
        format!(
            "Monoidal(objects={}, unit={})",
            self.mon.base().n_objects(),
            self.mon.unit()
        )
    }
}

/// The result of transporting a monoidal structure onto the skeleton.
#[pyclass(frozen)]
struct Completion {
    t: TransportedMonoidal,
}

#[pymethods]
impl Completion {
    #[getter]
    fn monoidal(&self) -> Monoidal {
        Monoidal { mon: Arc::clone(&self.t.monoidal) }
    }

    /// Object map of the completion functor H: C -> sk(C).
    #[getter]
    fn object_map(&self) -> Vec<usize> {
        self.t.weq.functor.omap().to_vec()
    }

    #[getter]
    fn strong(&self) -> bool {
        is_strong_monoidal(&self.t.h_mon)
    }

    fn check(&self) -> Vec<String> {
        let mut out = violations(&check_monoidal_laws(&self.t.monoidal));
        out.extend(violations(&moncat_core::laxmon::check_lax_monoidal_functor(&self.t.h_mon)));
        out.extend(violations(&self.t.weq.check()));
        out
    }

    fn to_json(&self) -> String {
        moncat_core::json::to_json(&Artifact::Transported(self.t.clone()))
    }

    fn __repr__(&self) -> String {
        format!(
            "Completion(objects={} -> {})",
            self.t.weq.functor.dom().n_objects(),
            self.t.monoidal.base().n_objects()
        )
    }
}

/// The elaborated contents of a `.cat` module.
#[pyclass(frozen)]
struct Module {
    inner: dsl::ElabModule,
}

#[pymethods]
impl Module {
    #[getter]
    fn categories(&self) -> Vec<String> {
        self.inner.categories.iter().map(|(n, _)| n.clone()).collect()
    }

    fn category(&self, name: &str) -> PyResult<Category> {
        let c = self
            .inner
            .category(name)
            .ok_or_else(|| PyValueError::new_err(format!("no category `{name}` in module")))?;
        Ok(Category { cat: Arc::clone(&c.cat) })
    }

    /// The category's monoidal structure, or None if it declares none.
    fn monoidal(&self, name: &str) -> PyResult<Option<Monoidal>> {
        let c = self
            .inner
            .category(name)
            .ok_or_else(|| PyValueError::new_err(format!("no category `{name}` in module")))?;
        Ok(c.monoidal.as_ref().map(|m| Monoidal { mon: Arc::clone(m) }))
    }

    fn __repr__(&self) -> String {
        format!("Module(categories={:?})", self.categories())
    }
}

/// Parse and elaborate `.cat` source text.
#[pyfunction]
fn load(text: &str) -> PyResult<Module> {
    match dsl::load(text) {
        Ok(inner) => Ok(Module { inner }),
        Err(e @ ElabError::Invalid(_)) => Err(PyValueError::new_err(e.to_string())),
        Err(e @ ElabError::Law { .. }) => Err(LawError::new_err(e.to_string())),
    }
}

/// Decode a `.cat.json` artifact. Returns a [`Category`], [`Monoidal`], or
/// [`Completion`] depending on the envelope kind.
#[pyfunction]
fn from_json(py: Python<'_>, text: &str) -> PyResult<PyObject> {
    let artifact =
        moncat_core::json::from_json(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
    match artifact {
        Artifact::Category(cat) => Ok(Category { cat }.into_py(py)),
        Artifact::Monoidal(mon) => Ok(Monoidal { mon }.into_py(py)),
        Artifact::Transported(t) => Ok(Completion { t }.into_py(py)),
        other => Err(PyValueError::new_err(format!(
            "artifact kind `{}` has no Python form",
            other.kind()
        ))),
    }
}

/// The skeleton of a category plus the object collapse map.
#[pyfunction]
fn skeletalize(c: &Category) -> (Category, Vec<usize>) {
    let (skel, weq) = moncat_core::transport::skeletalize(&c.cat);
    (Category { cat: Arc::clone(skel.cat()) }, weq.functor.omap().to_vec())
}

/// Transport the monoidal structure onto the skeleton.
#[pyfunction]
fn complete(m: &Monoidal) -> PyResult<Completion> {
    let (_, weq) = moncat_core::transport::skeletalize(m.mon.base());
    let t = transport_monoidal(&weq, &m.mon).map_err(|e| LawError::new_err(e.to_string()))?;
    Ok(Completion { t })
}

fn presheaf_arg(m: &Arc<MonoidalCategory>, spec: &Bound<'_, PyAny>) -> PyResult<Presheaf> {
    let base = m.base();
    if let Ok(x) = spec.extract::<usize>() {
        if x >= base.n_objects() {
            return Err(PyValueError::new_err(format!("no object {x}")));
        }
        return Ok(yoneda(base, x));
    }
    if let Ok(sizes) = spec.extract::<Vec<usize>>() {
        if base.n_morphisms() != base.n_objects() {
            return Err(PyValueError::new_err(
                "size lists describe presheaves on discrete bases only; pass an object id for y(x)",
            ));
        }
        return Presheaf::discrete(base, &sizes).map_err(|e| PyValueError::new_err(e.to_string()));
    }
    Err(PyValueError::new_err(
        "presheaf must be an object id (yoneda) or a list of fiber sizes",
    ))
}

/// Sizes of the Day tensor of two presheaves, per object. Each presheaf is
/// an object id (for a representable) or a list of fiber sizes (discrete
/// bases only).
#[pyfunction]
fn day_sizes(
    m: &Monoidal,
    left: &Bound<'_, PyAny>,
    right: &Bound<'_, PyAny>,
) -> PyResult<Vec<usize>> {
    let f = presheaf_arg(&m.mon, left)?;
    let g = presheaf_arg(&m.mon, right)?;
    let d = day_tensor(&m.mon, &f, &g, &bounds())
        .map_err(|e| WorkLimitError::new_err(e.to_string()))?;
    Ok(m.mon.base().objects().map(|c| d.size(c)).collect())
}

/// True when y(x) (x)_Day y(y) ~ y(x (x) y) for every object pair, with
/// two-sided inverse witnesses.
#[pyfunction]
fn day_representable(m: &Monoidal) -> PyResult<bool> {
    let base = m.mon.base();
    let b = bounds();
    for x in base.objects() {
        for y in base.objects() {
            let iso = representability_witness(&m.mon, x, y, &b)
                .map_err(|e| WorkLimitError::new_err(e.to_string()))?;
            let ok = iso.forward.check_naturality().is_ok()
                && iso.backward.check_naturality().is_ok()
                && iso.forward.is_iso()
                && iso.backward.is_iso();
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Cross-validate the skeletal completion against the Day-convolution
/// completion on representables.
#[pyfunction]
fn compare(py: Python<'_>, m: &Monoidal) -> PyResult<PyObject> {
    let cmp = compare_day_vs_transport(&m.mon, &bounds()).map_err(|e| match e {
        CompletionError::WorkLimit(w) => WorkLimitError::new_err(w.to_string()),
        other => LawError::new_err(other.to_string()),
    })?;
    let dict = pyo3::types::PyDict::new_bound(py);
    dict.set_item("ok", cmp.is_ok())?;
    dict.set_item("strong", is_strong_monoidal(&cmp.j))?;
    dict.set_item("cells_equal", cmp.cells_equal)?;
    dict.set_item("rezk_objects", cmp.rezk.monoidal.base().n_objects())?;
    dict.set_item("day_objects", cmp.day.monoidal.base().n_objects())?;
    Ok(dict.into())
}

#[pymodule]
fn moncat(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Category>()?;
    m.add_class::<Monoidal>()?;
    m.add_class::<Completion>()?;
    m.add_class::<Module>()?;
    m.add_function(wrap_pyfunction!(load, m)?)?;
    m.add_function(wrap_pyfunction!(from_json, m)?)?;
    m.add_function(wrap_pyfunction!(skeletalize, m)?)?;
    m.add_function(wrap_pyfunction!(complete, m)?)?;
    m.add_function(wrap_pyfunction!(day_sizes, m)?)?;
    m.add_function(wrap_pyfunction!(day_representable, m)?)?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    m.add("LawError", m.py().get_type_bound::<LawError>())?;
    m.add("WorkLimitError", m.py().get_type_bound::<WorkLimitError>())?;
    Ok(())
}
