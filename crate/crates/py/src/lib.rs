use pyo3::prelude::*;

#[pymodule]
fn facial_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let _ = m;
    Ok(())
}
