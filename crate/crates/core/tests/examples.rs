macro_rules! example {
    ($name:ident, $path:literal) => {
        #[path = $path]
        mod $name;
    };
}

example!(invariants_basics, "../examples/invariants_basics.rs");
example!(sprung_matrices, "../examples/sprung_matrices.rs");
example!(
    nonordinary_staircase,
    "../examples/nonordinary_staircase.rs"
);
example!(ordinary_theorem, "../examples/ordinary_theorem.rs");
example!(lemma_suite, "../examples/lemma_suite.rs");
example!(json_fixture, "../examples/json_fixture.rs");

#[test]
fn invariants_basics_runs() {
    invariants_basics::run_example().unwrap();
}

#[test]
fn sprung_matrices_runs() {
    sprung_matrices::run_example().unwrap();
}

#[test]
fn nonordinary_staircase_runs() {
    nonordinary_staircase::run_example().unwrap();
}

#[test]
fn ordinary_theorem_runs() {
    ordinary_theorem::run_example().unwrap();
}

#[test]
fn lemma_suite_runs() {
    lemma_suite::run_example().unwrap();
}

#[test]
fn json_fixture_runs() {
    json_fixture::run_example().unwrap();
}
