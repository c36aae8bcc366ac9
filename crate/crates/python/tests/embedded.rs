use pyo3::ffi::c_str;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn with_module<R>(f: impl FnOnce(Python<'_>, &Bound<'_, PyDict>) -> R) -> R {
    Python::initialize();
    Python::attach(|py| {
        let module = pyo3::wrap_pymodule!(tractscope_py::tractscope_py)(py);
        let globals = PyDict::new(py);
        globals.set_item("ts", module).unwrap();
        f(py, &globals)
    })
}

fn check(script: &std::ffi::CStr) {
    with_module(|py, g| {
        if let Err(e) = py.run(script, Some(g), None) {
            e.print(py);
            panic!("script failed");
        }
    });
}

#[test]
fn expressions() {
    check(c_str!(
        r#"
f = ts.Expr("z^3")
assert str(f.derivative()) == "3*z^2"
assert abs(f.eval(2j) - (-8j)) < 1e-12
assert ts.Expr("sin(z)").count_zeros((-1.0, 1.0, -1.0, 1.0)) == 1
try:
    ts.Expr("z^")
    raise AssertionError("no error")
except ts.ParseError as e:
    assert e.args[1] == 3
"#
    ));
}

#[test]
fn analysis_and_rendering() {
    check(c_str!(
        r#"
rep = ts.analyze("exp(z)", (-2.0, 2.0, -2.0, 2.0), res=81)
assert rep["schema_version"] == 1
assert rep["tracts"][0]["m"] == 1
ppm = ts.render_ppm("3", (-1.0, 1.0, -1.0, 1.0), res=2)
assert ppm == b"P6\n2 2\n255\n" + b"\xff" * 12
"#
    ));
}

#[test]
fn models_and_series() {
    check(c_str!(
        r#"
m = ts.PoissonModel(1.0, 0.0, [1+0j, -1+0j], [1.0, 1.0])
assert m.n == 2 and m.reflection_pairing()
assert ts.horodisc(1.0, 1.0) == (0.5, 0.5)
assert ts.winding_of_g(5.0) == 2
ok, margin = ts.verify_tree_bound(3, 0, "C+")
assert ok and margin < 0
try:
    ts.PoissonModel(1.0, 0.0, [0.5+0j], [1.0])
    raise AssertionError("no error")
except ts.TractscopeError:
    pass
"#
    ));
}
