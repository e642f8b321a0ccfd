//! Python bindings for `tbsd`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use tbsd::analysis::{self, WeightDistribution};
use tbsd::codespec::CodeSpec;
use tbsd::decode::{ChannelModel, DecoderMode, ReceivedFrame};
use tbsd::registry::Registry;
use tbsd::{BitVector, PolynomialPair, Stream};

fn err(e: tbsd::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn bits(s: &str) -> PyResult<BitVector> {
    s.parse().map_err(err)
}

fn mode(name: &str, iters: usize) -> PyResult<DecoderMode> {
    match name {
        "exact_ml" => Ok(DecoderMode::ExactMl),
        "wava" => Ok(DecoderMode::Wava { max_iters: iters }),
        other => Err(PyValueError::new_err(format!(
            "unknown decoder mode {other:?}"
        ))),
    }
}

/// Dense GF(2) matrix; rows are given and returned as bit strings.
#[pyclass(name = "BitMatrix", module = "pytbsd", from_py_object)]
#[derive(Clone)]
struct PyBitMatrix(tbsd::BitMatrix);

#[pymethods]
impl PyBitMatrix {
    #[new]
    fn new(rows: Vec<String>) -> PyResult<Self> {
        let rows = rows.iter().map(|r| bits(r)).collect::<PyResult<Vec<_>>>()?;
        tbsd::BitMatrix::from_rows(rows).map(Self).map_err(err)
    }

    #[getter]
    fn num_rows(&self) -> usize {
        self.0.num_rows()
    }

    #[getter]
    fn num_cols(&self) -> usize {
        self.0.num_cols()
    }

    fn rows(&self) -> Vec<String> {
        self.0.rows().iter().map(|r| r.to_bit_string()).collect()
    }

    fn rank(&self) -> usize {
        self.0.rank()
    }

    fn is_self_orthogonal(&self) -> bool {
        self.0.is_self_orthogonal()
    }

    fn is_self_dual(&self) -> PyResult<bool> {
        analysis::is_self_dual(&self.0).map_err(err)
    }

    fn contains(&self, word: &str) -> PyResult<bool> {
        self.0.contains(&bits(word)?).map_err(err)
    }

    fn multiply(&self, info: &str) -> PyResult<String> {
        Ok(self.0.mul_vec(&bits(info)?).map_err(err)?.to_bit_string())
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    fn __repr__(&self) -> String {
        format!("BitMatrix({}x{})", self.0.num_rows(), self.0.num_cols())
    }
}

/// Code description: construction type, length and polynomials.
#[pyclass(name = "CodeSpec", module = "pytbsd", from_py_object)]
#[derive(Clone)]
struct PyCodeSpec(CodeSpec);

#[pymethods]
impl PyCodeSpec {
    #[staticmethod]
    fn type_a0(name: &str, n: usize, g1: &str, g2: &str) -> PyResult<Self> {
        let p = PolynomialPair::parse(g1, g2).map_err(err)?;
        CodeSpec::type_a0(name, n, p).map(Self).map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (name, n, g1, g2, ones_stream=1))]
    fn type_a3(name: &str, n: usize, g1: &str, g2: &str, ones_stream: u8) -> PyResult<Self> {
        let p = PolynomialPair::parse(g1, g2).map_err(err)?;
        let s = Stream::from_index(ones_stream).map_err(err)?;
        CodeSpec::type_a3(name, n, p, s).map(Self).map_err(err)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        CodeSpec::parse(text).map(Self).map_err(err)
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        CodeSpec::load(path).map(Self).map_err(err)
    }

    /// Looks up a bundled fixture by name.
    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        let reg = Registry::load_default().map_err(err)?;
        reg.get(name)
            .cloned()
            .map(Self)
            .ok_or_else(|| PyValueError::new_err(format!("no registry entry {name:?}")))
    }

    #[getter]
    fn name(&self) -> String {
        self.0.name.clone()
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n
    }

    #[getter]
    fn k(&self) -> usize {
        self.0.k()
    }

    #[getter]
    fn construction(&self) -> &'static str {
        self.0.construction.keyword()
    }

    fn generator(&self) -> PyResult<PyBitMatrix> {
        self.0.generator().map(PyBitMatrix).map_err(err)
    }

    fn encode(&self, info: &str) -> PyResult<String> {
        Ok(tbsd::tbcc::encode(&self.0, &bits(info)?)
            .map_err(err)?
            .to_bit_string())
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    fn __repr__(&self) -> String {
        format!(
            "CodeSpec({:?}, n={}, {})",
            self.0.name,
            self.0.n,
            self.0.construction.keyword()
        )
    }
}

/// Exact weight distribution of a code.
#[pyclass(name = "WeightDistribution", module = "pytbsd", from_py_object)]
#[derive(Clone)]
struct PyWeightDistribution(WeightDistribution);

#[pymethods]
impl PyWeightDistribution {
    #[new]
    fn new(counts: Vec<u64>) -> Self {
        Self(WeightDistribution::from_counts(counts))
    }

    #[getter]
    fn counts(&self) -> Vec<u64> {
        self.0.counts().to_vec()
    }

    fn count(&self, w: usize) -> u64 {
        self.0.count(w)
    }

    fn total(&self) -> u128 {
        self.0.total()
    }

    fn min_distance(&self) -> PyResult<usize> {
        self.0.min_distance().map_err(err)
    }

    fn parity_class(&self) -> &'static str {
        self.0.parity_class().as_str()
    }

    fn is_symmetric(&self) -> bool {
        self.0.is_symmetric()
    }

    fn macwilliams_selfcheck(&self, k: usize) -> PyResult<bool> {
        analysis::macwilliams_selfcheck(&self.0, k).map_err(err)
    }

    /// Fits an enumerator template given by bundled name or file path.
    fn fit(&self, py: Python<'_>, template: &str) -> PyResult<Py<PyDict>> {
        let tpl = if std::path::Path::new(template).exists() {
            analysis::EnumeratorTemplate::load(template)
        } else {
            Registry::load_default().and_then(|r| r.template(template))
        }
        .map_err(err)?;
        let fit = analysis::fit_template(&self.0, &tpl).map_err(err)?;
        let d = PyDict::new(py);
        for (p, v) in &fit.params {
            d.set_item(p, v)?;
        }
        d.set_item("consistent", fit.consistent)?;
        Ok(d.unbind())
    }
}

#[derive(FromPyObject)]
enum Frame {
    Hard(String),
    Soft(Vec<f32>),
}

/// Weight distribution of a matrix or code by Gray-code enumeration.
#[pyfunction]
#[pyo3(signature = (code, threads=1))]
fn weight_distribution(
    py: Python<'_>,
    code: &Bound<'_, PyAny>,
    threads: usize,
) -> PyResult<PyWeightDistribution> {
    let g = match code.extract::<PyCodeSpec>() {
        Ok(spec) => spec.0.generator().map_err(err)?,
        Err(_) => code.extract::<PyBitMatrix>()?.0,
    };
    py.detach(|| analysis::weight_distribution_gray(&g, threads))
        .map(PyWeightDistribution)
        .map_err(err)
}

/// Decodes one frame: a bit string (hard) or a list of soft values.
#[pyfunction]
#[pyo3(signature = (spec, frame, mode="exact_ml", iters=DecoderMode::DEFAULT_WAVA_ITERS))]
fn decode(
    py: Python<'_>,
    spec: &PyCodeSpec,
    frame: Frame,
    mode: &str,
    iters: usize,
) -> PyResult<Py<PyDict>> {
    let frame = match frame {
        Frame::Hard(s) => ReceivedFrame::Hard(bits(&s)?),
        Frame::Soft(v) => ReceivedFrame::Soft(v),
    };
    let r = tbsd::decode::decode(&frame, &spec.0, self::mode(mode, iters)?).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("info", r.info.to_bit_string())?;
    d.set_item("metric", r.metric)?;
    d.set_item("mode", r.mode.name())?;
    d.set_item("coset_bit", r.coset_bit)?;
    d.set_item("converged", r.converged)?;
    d.set_item("iterations", r.iterations)?;
    Ok(d.unbind())
}

/// Runs a seeded error-rate simulation; `channel` is `bsc:P` or `awgn:DB`.
#[pyfunction]
#[pyo3(signature = (spec, channel, frames, seed=1, mode="exact_ml", iters=DecoderMode::DEFAULT_WAVA_ITERS, threads=1))]
#[allow(clippy::too_many_arguments)]
fn simulate(
    py: Python<'_>,
    spec: &PyCodeSpec,
    channel: &str,
    frames: u64,
    seed: u64,
    mode: &str,
    iters: usize,
    threads: usize,
) -> PyResult<Py<PyDict>> {
    let ch = ChannelModel::parse(channel, seed).map_err(err)?;
    let mode = self::mode(mode, iters)?;
    let r = py
        .detach(|| tbsd::decode::simulate(&spec.0, &ch, frames, mode, threads))
        .map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("frames", r.frames)?;
    d.set_item("bit_errors", r.bit_errors)?;
    d.set_item("frame_errors", r.frame_errors)?;
    d.set_item("ber", r.ber(spec.0.k()))?;
    d.set_item("fer", r.fer())?;
    d.set_item("report", r.to_text(spec.0.k(), false))?;
    Ok(d.unbind())
}

/// Names of the bundled fixtures.
#[pyfunction]
fn registry_names() -> PyResult<Vec<String>> {
    let reg = Registry::load_default().map_err(err)?;
    Ok(reg.entries().iter().map(|e| e.name.clone()).collect())
}

#[pymodule]
fn pytbsd(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBitMatrix>()?;
    m.add_class::<PyCodeSpec>()?;
    m.add_class::<PyWeightDistribution>()?;
    m.add_function(wrap_pyfunction!(weight_distribution, m)?)?;
    m.add_function(wrap_pyfunction!(decode, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(registry_names, m)?)?;
    Ok(())
}
