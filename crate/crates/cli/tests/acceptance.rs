//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use eigenmatrix::factor::{diagonalize, matrix_power, ode_general_solution, verify_ode_term};
use eigenmatrix::jordan::{jordan_form, kappa_power_sequence};
use eigenmatrix::kappa::{
    complementary_product, cross_product_eigenvector_3x3, eigenvectors_via_kappa, is_diagonalizable,
    kappa_of, left_eigenvectors_via_kappa, shortcut_2x2, two_spectrum_eigenvectors,
};
use eigenmatrix::matrix::{mat_rank, mat_sub_scalar_diag, mat_vec_mul};
use eigenmatrix::samples;
use eigenmatrix::verify::{
    cayley_hamilton_check, oracle_eigenvectors, oracle_left_eigenvectors, residual_check, same_span,
    seeded_corpus, CorpusEntry,
};
use eigenmatrix::{EigenError, GaussianRational, GqMatrix, GqVector, Side, Spectrum};
use eigenmatrix_cli::bench::BenchReport;
use eigenmatrix_cli::io::{matrix_json, spectrum_json};
use eigenmatrix_cli::run_args;

type G = GaussianRational;
type Check = Result<(), String>;

const CORPUS_SEED: u64 = 20_240_601;
const CORPUS_SIZE: usize = 500;

fn g(v: i64) -> G {
    G::from_int(v)
}

fn v(values: &[i64]) -> GqVector {
    GqVector::from_ints(values)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn span_is(got: &[GqVector], expected: &[GqVector], what: &str) -> Check {
    let n = expected[0].len();
    let ok = same_span(got, expected, n).map_err(|e| format!("{what}: {e}"))?;
    ensure(ok, || format!("{what}: got {got:?}, expected span of {expected:?}"))
}

fn err<E: std::fmt::Display>(what: &str) -> impl FnOnce(E) -> String + '_ {
    move |e| format!("{what}: {e}")
}

fn shortcut_regression() -> Check {
    let a = samples::distinct_2x2();
    let (v2, v5) = shortcut_2x2(&a, &g(2), &g(5)).map_err(err("shortcut"))?;
    span_is(&[v2], &[v(&[-1, 1])], "lambda 2")?;
    span_is(&[v5], &[v(&[1, 2])], "lambda 5")
}

fn two_spectrum_regression() -> Check {
    // (matrix, λ1, λ2, eigenvectors of λ1, eigenvectors of λ2) as stated.
    type Case = (&'static str, GqMatrix, i64, i64, Vec<GqVector>, Vec<GqVector>);
    let cases: Vec<Case> = vec![
        ("symmetric 2x2", samples::symmetric_2x2(), 1, 3, vec![v(&[1, -1])], vec![v(&[1, 1])]),
        (
            "repeated 3x3",
            samples::repeated_3x3(),
            1,
            -1,
            vec![v(&[1, 2, 3]), v(&[1, 1, 2])],
            vec![v(&[1, 2, 1])],
        ),
        (
            "fractional 3x3",
            samples::fractional_3x3(),
            1,
            2,
            vec![v(&[1, 2, 1])],
            vec![v(&[1, 0, 1]), v(&[1, 2, 3])],
        ),
        (
            "triple root 4x4",
            samples::triple_root_4x4(),
            2,
            1,
            vec![v(&[1, 2, 3, 4])],
            vec![v(&[1, 0, -1, 0]), v(&[1, -1, 0, 0]), v(&[0, 1, 0, 1])],
        ),
        (
            "paired 4x4",
            samples::paired_4x4(),
            2,
            1,
            vec![v(&[0, 0, 1, 1]), v(&[-1, 1, 0, 1])],
            vec![v(&[1, 0, 1, 1]), v(&[1, -1, 0, 1])],
        ),
    ];
    for (name, a, l1, l2, e1, e2) in cases {
        let (got1, got2) = two_spectrum_eigenvectors(&a, &g(l1), &g(l2)).map_err(err(name))?;
        span_is(&got1, &e1, &format!("{name}, lambda {l1}"))?;
        span_is(&got2, &e2, &format!("{name}, lambda {l2}"))?;
        let mut pairs = vec![(g(l1), e1.len()), (g(l2), e2.len())];
        pairs.sort();
        let s = Spectrum::new(pairs).map_err(err(name))?;
        for (l, expected) in [(l1, &e1), (l2, &e2)] {
            let ours = eigenvectors_via_kappa(&a, &s, &g(l), None).map_err(err(name))?;
            span_is(&ours, expected, &format!("{name}, kappa path, lambda {l}"))?;
        }
    }
    let d = samples::defective_2x2();
    let s = Spectrum::from_ints(&[(2, 2)]);
    let verdict = is_diagonalizable(&d, &s, None).map_err(err("defective 2x2"))?;
    ensure(!verdict.diagonalizable, || "defective 2x2 reported diagonalizable".into())?;
    ensure(
        verdict.witness() == Some(&GqMatrix::from_ints(&[[1, -1], [1, -1]])),
        || format!("witness {:?}", verdict.witness()),
    )?;
    let only = eigenvectors_via_kappa(&d, &s, &g(2), None).map_err(err("defective 2x2"))?;
    span_is(&only, &[v(&[1, 1])], "defective 2x2 eigenvector")?;
    ensure(
        matches!(shortcut_2x2(&d, &g(2), &g(2)), Err(EigenError::Defective { .. })),
        || "shortcut did not flag the defective 2x2".into(),
    )
}

fn product_regression() -> Check {
    let a = samples::singular_3x3();
    let s = Spectrum::from_ints(&[(-4, 1), (0, 1), (3, 1)]);
    let p = complementary_product(&a, &s, &g(0), false, None).map_err(err("product"))?;
    let expected = GqMatrix::from_ints(&[[1, 0, 1], [6, 0, 6], [-13, 0, -13]]);
    ensure(p == expected, || format!("complementary product\n{p}"))?;

    let h = samples::mixed_4x4();
    let w1 = kappa_of(&h, &g(1)).map_err(err("kappa 1"))?.matrix.col(0);
    let k2 = mat_vec_mul(&mat_sub_scalar_diag(&h, &g(2)).map_err(err("kappa 2"))?, &w1, None).map_err(err("k2 w1"))?;
    ensure(k2 == v(&[-2, -2, -2, -4]), || format!("k2 w1 = {k2}"))?;
    let k0 = mat_vec_mul(&mat_sub_scalar_diag(&h, &g(0)).map_err(err("kappa 0"))?, &w1, None).map_err(err("k0 w1"))?;
    ensure(k0 == v(&[2, 4, 6, 8]), || format!("k0 w1 = {k0}"))
}

fn diagonalization_reconstruction() -> Check {
    let cases = [
        ("distinct 3x3", samples::distinct_3x3(), vec![1, 2, 3]),
        ("fractional 3x3", samples::fractional_3x3(), vec![1, 2, 2]),
        ("triple root 4x4", samples::triple_root_4x4(), vec![1, 1, 1, 2]),
        ("singular 3x3", samples::singular_3x3(), vec![-4, 0, 3]),
    ];
    for (name, a, eigenvalues) in cases {
        let d = diagonalize(&a, None).map_err(err(name))?;
        let back = d.reconstruct().map_err(err(name))?;
        ensure(back == a, || format!("{name}: P D P^-1 differs from the input"))?;
        let expected: Vec<G> = eigenvalues.into_iter().map(g).collect();
        ensure(d.eigen_order == expected, || format!("{name}: D = {:?}", d.eigen_order))?;
        ensure(d.d == GqMatrix::diagonal(&expected), || format!("{name}: D is not diagonal"))?;
    }
    Ok(())
}

fn complex_case() -> Check {
    let k = samples::complex_5x5();
    let s = samples::complex_5x5_spectrum();
    let expected = [v(&[1, 1, -1, 0, 2])];
    let ours = eigenvectors_via_kappa(&k, &s, &g(1), None).map_err(err("kappa"))?;
    let oracle = oracle_eigenvectors(&k, &g(1), None).map_err(err("oracle"))?;
    span_is(&ours, &expected, "kappa path")?;
    span_is(&oracle, &expected, "oracle")?;
    ensure(ours == expected, || format!("normalized kappa vector {ours:?}"))
}

fn defective_and_jordan() -> Check {
    let a = samples::defective_3x3();
    let s = Spectrum::from_ints(&[(-2, 2), (1, 1)]);
    let verdict = is_diagonalizable(&a, &s, None).map_err(err("check"))?;
    let witness = GqMatrix::from_ints(&[[-3, -3, 0], [3, 3, 0], [0, 0, 0]]);
    ensure(verdict.witness() == Some(&witness), || format!("witness {:?}", verdict.witness()))?;
    let f = jordan_form(&a, &s).map_err(err("jordan 3x3"))?;
    ensure(f.reconstruct().map_err(err("jordan 3x3"))? == a, || "3x3 reconstruction".into())?;

    let t = samples::two_block_5x5();
    let ts = Spectrum::from_ints(&[(2, 5)]);
    let seq = kappa_power_sequence(&t, &g(2)).map_err(err("powers"))?;
    let ranks: Vec<usize> = seq.iter().map(|(_, r)| *r).collect();
    ensure(ranks == vec![3, 1, 0], || format!("rank sequence {ranks:?}"))?;
    let squared = GqMatrix::from_ints(&[
        [0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0],
        [-1, 0, -1, 1, 0],
        [-1, 0, -1, 1, 0],
        [-1, 0, -1, 1, 0],
    ]);
    ensure(seq[1].0 == squared, || format!("second power\n{}", seq[1].0))?;
    ensure(seq[2].0.is_zero(), || "third power is nonzero".into())?;
    let f = jordan_form(&t, &ts).map_err(err("jordan 5x5"))?;
    ensure(f.block_sizes(&g(2)) == vec![3, 2], || format!("blocks {:?}", f.blocks))?;
    ensure(f.reconstruct().map_err(err("two block"))? == t, || "two-block reconstruction".into())?;

    let l = samples::lower_triangular_5x5();
    let ls = Spectrum::from_ints(&[(1, 2), (2, 3)]);
    let f = jordan_form(&l, &ls).map_err(err("jordan lower"))?;
    ensure(
        f.block_sizes(&g(1)) == vec![2] && f.block_sizes(&g(2)) == vec![3],
        || format!("blocks {:?}", f.blocks),
    )?;
    ensure(f.reconstruct().map_err(err("lower"))? == l, || "lower triangular reconstruction".into())
}

fn oracle_equivalence(corpus: &[CorpusEntry]) -> Check {
    let dims: std::collections::BTreeSet<usize> = corpus.iter().map(|e| e.config.dim).collect();
    ensure(dims == (2..=5).collect(), || format!("dimensions {dims:?}"))?;
    let defective = corpus.iter().filter(|e| !e.config.is_diagonalizable()).count();
    ensure(defective > 0 && defective < corpus.len(), || format!("{defective} defective"))?;
    for (i, e) in corpus.iter().enumerate() {
        let s = e.spectrum();
        let n = e.config.dim;
        let mut complete = true;
        for (l, m) in s.pairs() {
            let ours = eigenvectors_via_kappa(&e.matrix, s, l, None).map_err(err(&format!("entry {i}")))?;
            let oracle = oracle_eigenvectors(&e.matrix, l, None).map_err(err(&format!("entry {i}")))?;
            let ok = same_span(&ours, &oracle, n).map_err(err("span"))?;
            ensure(ok, || format!("entry {i}, lambda {l}: spans differ"))?;
            let geom = n - mat_rank(&mat_sub_scalar_diag(&e.matrix, l).map_err(err("kappa"))?);
            complete &= geom == *m;
        }
        ensure(cayley_hamilton_check(&e.matrix, s).map_err(err("cayley"))?, || {
            format!("entry {i}: full product nonzero")
        })?;
        let verdict = is_diagonalizable(&e.matrix, s, None).map_err(err("check"))?;
        ensure(verdict.diagonalizable == complete, || format!("entry {i}: verdict disagrees"))?;
    }
    Ok(())
}

fn left_eigenvectors(corpus: &[CorpusEntry]) -> Check {
    for (i, e) in corpus.iter().enumerate() {
        let s = e.spectrum();
        for (l, _) in s.pairs() {
            let ours = left_eigenvectors_via_kappa(&e.matrix, s, l, None).map_err(err(&format!("entry {i}")))?;
            for w in &ours {
                ensure(
                    residual_check(&e.matrix, l, w, Side::Left).map_err(err("residual"))?,
                    || format!("entry {i}, lambda {l}: w A != l w"),
                )?;
            }
            let oracle = oracle_left_eigenvectors(&e.matrix, l).map_err(err("oracle"))?;
            let ok = same_span(&ours, &oracle, e.config.dim).map_err(err("span"))?;
            ensure(ok, || format!("entry {i}, lambda {l}: left spans differ"))?;
        }
    }
    Ok(())
}

fn cross_product(corpus: &[CorpusEntry]) -> Check {
    let got = cross_product_eigenvector_3x3(&samples::singular_3x3(), &g(0)).map_err(err("singular 3x3"))?;
    ensure(got == v(&[1, 6, -13]), || format!("lambda 0 gives {got}"))?;
    let mut checked = 0;
    for (i, e) in corpus.iter().enumerate().filter(|(_, e)| e.config.dim == 3) {
        for (l, _) in e.spectrum().pairs() {
            let oracle = oracle_eigenvectors(&e.matrix, l, None).map_err(err("oracle"))?;
            if oracle.len() != 1 {
                continue;
            }
            let c = cross_product_eigenvector_3x3(&e.matrix, l).map_err(err(&format!("entry {i}, lambda {l}")))?;
            ensure(same_span(&[c], &oracle, 3).map_err(err("span"))?, || {
                format!("entry {i}, lambda {l}: cross product outside the eigenspace")
            })?;
            checked += 1;
        }
    }
    ensure(checked > 0, || "no 3x3 corpus eigenvalue checked".into())
}

fn applications(corpus: &[CorpusEntry]) -> Check {
    for (i, e) in corpus.iter().enumerate() {
        let name = format!("entry {i}");
        let factored = match diagonalize(&e.matrix, Some(e.spectrum())) {
            Ok(d) => Some(d),
            Err(EigenError::NotDiagonalizable { .. }) => None,
            Err(other) => return Err(format!("{name}: {other}")),
        };
        // Defective matrices have no diagonal factorization; for them only
        // the public entry point (which falls back to repeated squaring) runs.
        let mut direct = GqMatrix::identity(e.config.dim);
        for n in 0..=8u32 {
            if let Some(d) = &factored {
                let via = d.power(n).map_err(err(&name))?;
                ensure(via == direct, || format!("{name}: power {n} differs"))?;
            }
            if n == 8 {
                let via = matrix_power(&e.matrix, n, Some(e.spectrum())).map_err(err(&name))?;
                ensure(via == direct, || format!("{name}: matrix_power({n}) differs"))?;
            }
            direct = direct.mul(&e.matrix).map_err(err("mul"))?;
        }
    }
    let worked = [
        ("distinct", samples::distinct_2x2(), Spectrum::from_ints(&[(2, 1), (5, 1)])),
        ("defective", GqMatrix::from_ints(&[[2, 1], [0, 2]]), Spectrum::from_ints(&[(2, 2)])),
        (
            "rotation",
            GqMatrix::from_ints(&[[0, -1], [1, 0]]),
            Spectrum::new(vec![(G::from_ints(0, -1), 1), (G::from_ints(0, 1), 1)]).map_err(err("spectrum"))?,
        ),
    ];
    let cases = worked
        .iter()
        .map(|(name, a, s)| (name.to_string(), a, s))
        .chain(corpus.iter().take(50).enumerate().map(|(i, e)| (format!("entry {i}"), &e.matrix, e.spectrum())));
    for (name, a, s) in cases {
        let terms = ode_general_solution(a, Some(s), a.is_real()).map_err(err(&name))?;
        ensure(terms.len() == a.rows(), || format!("{name}: {} terms", terms.len()))?;
        for t in &terms {
            ensure(verify_ode_term(a, t).map_err(err(&name))?, || format!("{name}: term {} fails", t.label))?;
        }
        if name == "rotation" {
            ensure(terms.iter().all(|t| t.trig.is_some()), || "rotation terms not realified".into())?;
        }
    }
    Ok(())
}

fn bench_determinism(corpus: &[CorpusEntry]) -> Check {
    let dir = tempfile::tempdir().map_err(err("tempdir"))?;
    let bench = |args: &[&str]| -> Result<(serde_json::Value, BenchReport), String> {
        let out = run_args(["eigenmatrix", "bench"].iter().copied().chain(args.iter().copied()));
        ensure(out.code == 0, || format!("bench exit {}: {}", out.code, out.stderr))?;
        let raw: serde_json::Value = serde_json::from_str(&out.stdout).map_err(err("json"))?;
        let report = serde_json::from_value(raw.clone()).map_err(err("schema"))?;
        Ok((raw, report))
    };
    for (i, e) in corpus.iter().take(40).enumerate() {
        let m = dir.path().join(format!("m{i}.json"));
        let s = dir.path().join(format!("s{i}.json"));
        std::fs::write(&m, serde_json::to_string(&matrix_json(&e.matrix)).unwrap()).map_err(err("write"))?;
        std::fs::write(&s, spectrum_json(e.spectrum()).to_string()).map_err(err("write"))?;
        let (m, s) = (m.display().to_string(), s.display().to_string());
        let args = [m.as_str(), "--spectrum", s.as_str(), "--json"];
        let (raw, first) = bench(&args)?;
        let (_, second) = bench(&args)?;
        for method in ["kappa", "oracle"] {
            for key in ["scalar_mults", "scalar_adds", "scalar_divs", "wall_time_ns", "per_eigenvalue"] {
                ensure(raw[method].get(key).is_some(), || format!("missing {method}.{key}"))?;
            }
        }
        ensure(first.kappa.without_timing() == second.kappa.without_timing(), || {
            format!("entry {i}: kappa counts differ between runs")
        })?;
        ensure(first.oracle.without_timing() == second.oracle.without_timing(), || {
            format!("entry {i}: oracle counts differ between runs")
        })?;
        for (name, r) in [("kappa", &first.kappa), ("oracle", &first.oracle)] {
            ensure(r.scalar_mults + r.scalar_adds + r.scalar_divs > 0, || {
                format!("entry {i}: {name} counts are zero")
            })?;
            ensure(r.per_eigenvalue.len() == e.spectrum().len(), || format!("entry {i}: {name} breakdown"))?;
            let sum: u64 = r.per_eigenvalue.iter().map(|x| x.scalar_mults + x.scalar_adds + x.scalar_divs).sum();
            ensure(sum == r.scalar_mults + r.scalar_adds + r.scalar_divs, || {
                format!("entry {i}: {name} breakdown does not sum to the totals")
            })?;
        }
        ensure(first.input.dim == e.config.dim, || format!("entry {i}: input descriptor"))?;
    }
    let (a, _) = bench(&["--seed", "17", "--dim", "4", "--json"])?;
    let (b, _) = bench(&["--seed", "17", "--dim", "4", "--json"])?;
    ensure(a["kappa"]["scalar_mults"] == b["kappa"]["scalar_mults"], || "seeded bench differs".into())?;
    ensure(a["input"] == b["input"], || "seeded bench input differs".into())
}

fn run_criterion(id: usize, name: &str, f: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into()))
    });
    let ms = start.elapsed().as_millis();
    match result {
        Ok(()) => {
            println!("PASS  {id:>2}. {name} ({ms} ms)");
            true
        }
        Err(reason) => {
            println!("FAIL  {id:>2}. {name} ({ms} ms): {reason}");
            false
        }
    }
}

fn main() {
    let corpus = seeded_corpus(CORPUS_SEED, CORPUS_SIZE).expect("corpus generation");
    let corpus = &corpus;
    let results = [
        run_criterion(1, "2x2 shortcut regression", shortcut_regression),
        run_criterion(2, "two-point spectrum regression", two_spectrum_regression),
        run_criterion(3, "complementary product regression", product_regression),
        run_criterion(4, "diagonalization reconstruction", diagonalization_reconstruction),
        run_criterion(5, "complex exact eigenspace", complex_case),
        run_criterion(6, "defective detection and Jordan structure", defective_and_jordan),
        run_criterion(7, "oracle equivalence on 500 seeded matrices", || oracle_equivalence(corpus)),
        run_criterion(8, "left eigenvectors on the corpus", || left_eigenvectors(corpus)),
        run_criterion(9, "cross-product method", || cross_product(corpus)),
        run_criterion(10, "matrix powers and ODE solutions", || applications(corpus)),
        run_criterion(11, "benchmark determinism", || bench_determinism(corpus)),
    ];
    let passed = results.iter().filter(|&&r| r).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
