//! Python bindings: a `World` class wrapping the simulation plus the pure
//! response functions and the null-model comparison.

use pyo3::exceptions::{PyMemoryError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyBytes, PyDict};

use swarm_canvas::config::{parse_config, serialize_config};
use swarm_canvas::metrics::{self, MetricsRecord};
use swarm_canvas::{agents, init_world, snapshot, SwarmError, WorldState};

fn py_err(e: SwarmError) -> PyErr {
    match e {
        SwarmError::Resource(_) => PyMemoryError::new_err(e.to_string()),
        SwarmError::Observer { .. } | SwarmError::Undefined(_) => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn record_dict<'py>(py: Python<'py>, r: &MetricsRecord) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("tick", r.tick)?;
    d.set_item("spatial_entropy", r.spatial_entropy.clone())?;
    d.set_item("local_similarity", r.local_similarity)?;
    d.set_item("coverage", r.coverage)?;
    d.set_item("total_mass", r.total_mass.clone())?;
    d.set_item("deposit_events", r.deposit_events.clone())?;
    Ok(d)
}

/// A simulation world: canvas field, agent roster, tick counter and RNG.
#[pyclass(module = "swarm_canvas")]
struct World {
    inner: WorldState,
}

#[pymethods]
impl World {
    /// Build a world from config text (`key = value` lines); an empty string
    /// gives the defaults.
    #[new]
    #[pyo3(signature = (config = ""))]
    fn new(config: &str) -> PyResult<Self> {
        let params = parse_config(config).map_err(py_err)?;
        Ok(World {
            inner: init_world(&params).map_err(py_err)?,
        })
    }

    /// Decode a snapshot produced by `snapshot()`.
    #[staticmethod]
    fn restore(data: &[u8]) -> PyResult<Self> {
        Ok(World {
            inner: snapshot::decode(data).map_err(py_err)?,
        })
    }

    #[getter]
    fn tick(&self) -> u64 {
        self.inner.tick()
    }

    #[getter]
    fn width(&self) -> usize {
        self.inner.field().width()
    }

    #[getter]
    fn height(&self) -> usize {
        self.inner.field().height()
    }

    #[getter]
    fn channels(&self) -> usize {
        self.inner.field().channels()
    }

    #[getter]
    fn deposit_events(&self) -> Vec<u64> {
        self.inner.deposit_events().to_vec()
    }

    /// Canonical config text of this world's parameters.
    fn config(&self) -> String {
        serialize_config(self.inner.params())
    }

    fn step(&mut self) {
        self.inner.step();
    }

    /// Advance `ticks` steps without holding the interpreter lock.
    fn advance(&mut self, py: Python<'_>, ticks: u64) {
        let world = &mut self.inner;
        py.detach(|| world.advance(ticks));
    }

    /// Live field values, row-major `(y, x, channel)`.
    fn field_values(&self) -> Vec<f64> {
        self.inner.field().values().to_vec()
    }

    /// Permanent ink accumulator, same layout as `field_values()`.
    fn ink_values(&self) -> Vec<f64> {
        self.inner.ink().to_vec()
    }

    /// `(id, x, y, heading, channel, steps_since_deposit)` per agent.
    fn agents(&self) -> Vec<(usize, usize, usize, usize, usize, u32)> {
        self.inner
            .agents()
            .iter()
            .map(|a| {
                (
                    a.id,
                    a.pos.x,
                    a.pos.y,
                    a.heading.index(),
                    a.channel,
                    a.steps_since_deposit,
                )
            })
            .collect()
    }

    fn snapshot<'py>(&self, py: Python<'py>) -> Bound<'py, PyBytes> {
        PyBytes::new(py, &snapshot::encode(&self.inner))
    }

    fn snapshot_hash(&self) -> u64 {
        self.inner.snapshot_hash()
    }

    /// Binary PPM image of the configured layer, or of the live field.
    #[pyo3(signature = (live = false))]
    fn render<'py>(&self, py: Python<'py>, live: bool) -> PyResult<Bound<'py, PyBytes>> {
        let p = self.inner.params();
        let layer = if live {
            self.inner.field().values()
        } else {
            self.inner.render_layer()
        };
        let bytes =
            swarm_canvas::render::render_layer(layer, p.width, p.height, p.channels, &p.palette)
                .map_err(py_err)?;
        Ok(PyBytes::new(py, &bytes))
    }

    fn metrics<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        record_dict(py, &metrics::record(&self.inner))
    }

    fn __repr__(&self) -> String {
        format!(
            "World({}x{}x{}, agents={}, tick={})",
            self.width(),
            self.height(),
            self.channels(),
            self.inner.agents().len(),
            self.tick()
        )
    }
}

/// Validate config text and return its canonical form.
#[pyfunction]
fn canonical_config(text: &str) -> PyResult<String> {
    Ok(serialize_config(&parse_config(text).map_err(py_err)?))
}

#[pyfunction]
fn deposit_probability(s: f64, theta: f64, n: f64, p0: f64) -> PyResult<f64> {
    if !(theta > 0.0 && n >= 1.0 && (0.0..=1.0).contains(&p0)) {
        return Err(PyValueError::new_err(
            "need theta > 0, n >= 1, 0 <= p0 <= 1",
        ));
    }
    Ok(agents::deposit_probability(s, theta, n, p0))
}

#[pyfunction]
fn movement_weight(sigma: f64, beta: f64, delta: f64) -> PyResult<f64> {
    if !(sigma >= 0.0 && beta >= 0.0 && delta >= 0.0) {
        return Err(PyValueError::new_err("sigma, beta and delta must be >= 0"));
    }
    Ok(agents::movement_weight(sigma, beta, delta))
}

/// Run the coupled model and its rate-matched null model; returns the two
/// metric series and deposit rates.
#[pyfunction]
fn null_model<'py>(py: Python<'py>, config: &str) -> PyResult<Bound<'py, PyDict>> {
    let params = parse_config(config).map_err(py_err)?;
    let cmp = py
        .detach(|| metrics::null_model_run(&params))
        .map_err(py_err)?;
    let d = PyDict::new(py);
    let series = |s: &[MetricsRecord]| -> PyResult<Vec<Bound<'py, PyDict>>> {
        s.iter().map(|r| record_dict(py, r)).collect()
    };
    d.set_item("coupled", series(&cmp.coupled)?)?;
    d.set_item("null", series(&cmp.null)?)?;
    d.set_item("coupled_rate", cmp.coupled_rate)?;
    d.set_item("null_rate", cmp.null_rate)?;
    Ok(d)
}

#[pymodule]
#[pyo3(name = "swarm_canvas")]
fn swarm_canvas_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<World>()?;
    m.add_function(wrap_pyfunction!(canonical_config, m)?)?;
    m.add_function(wrap_pyfunction!(deposit_probability, m)?)?;
    m.add_function(wrap_pyfunction!(movement_weight, m)?)?;
    m.add_function(wrap_pyfunction!(null_model, m)?)?;
    Ok(())
}
