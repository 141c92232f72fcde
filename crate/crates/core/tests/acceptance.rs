//! Acceptance gate: one line per criterion, exact arithmetic throughout.

mod common;

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

use perverse_cells::algebra::{opposite, quadratic_dual, same_presentation, QuadraticQuiverAlgebra};
use perverse_cells::cellular::CellularData;
use perverse_cells::complex::SimplicialComplex;
use perverse_cells::fixtures;
use perverse_cells::koszul::{ext_vs_dual, koszulity_check};
use perverse_cells::linalg::{q, Matrix};
use perverse_cells::module::{check_module, random_module, random_module_with, ModuleBudget};
use perverse_cells::perversity::{enumerate_perversities, Perversity, PerversityError};
use perverse_cells::quiver::Quiver;
use perverse_cells::sheaf::{composite_map, poset_leq, validate_tea, SheafContext};
use perverse_cells::triangulation::PerverseTriangulation;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::Oracle;

type Outcome = Result<String, Box<dyn std::error::Error>>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pairs() -> Vec<(&'static str, Arc<SimplicialComplex>, Perversity)> {
    let mut out = Vec::new();
    for (name, x) in fixtures::test_complexes() {
        for d in enumerate_perversities(x.dimension()) {
            out.push((name, x.clone(), d));
        }
    }
    out
}

fn budget_for(x: &SimplicialComplex) -> ModuleBudget {
    if x.len() > 10 {
        ModuleBudget { max_multiplicity: 1, relations: 4, coefficient_bound: 2 }
    } else {
        ModuleBudget::default()
    }
}

fn reduction() -> Outcome {
    for x in [fixtures::interval(), fixtures::triangle(), fixtures::tetrahedron_boundary()] {
        let x = Arc::new(x);
        let n = x.dimension();
        // The (-δ)-triangulation for δ = bottom is the one for the top perversity.
        let t = PerverseTriangulation::new(x.clone(), &Perversity::bottom(n).negate())?;
        let sd = x.subdivision();
        for s in x.ids() {
            let open: BTreeSet<usize> = (0..sd.len()).filter(|&f| sd.flag(f).top() == s).collect();
            check(t.perverse_simplex(s)?.flags == open, || format!("{} differs from its open simplex", x.key(s)))?;
        }
    }
    Ok("every perverse simplex is an open simplex".into())
}

fn partition_and_components() -> Outcome {
    let mut count = 0;
    for (name, x, d) in pairs() {
        let t = PerverseTriangulation::new(x, &d)?;
        check(t.is_partition(), || format!("{name} {d}: not a partition"))?;
        t.check_components().map_err(|k| format!("{name} {d}: components differ at level {k}"))?;
        count += 1;
    }
    Ok(format!("{count} (complex, perversity) pairs"))
}

fn quadratic_duality() -> Outcome {
    let mut count = 0;
    for (name, x, d) in pairs() {
        let a = QuadraticQuiverAlgebra::chain_complex_algebra(&x, &d);
        let b = QuadraticQuiverAlgebra::equivalence_algebra(&x, &d.negate());
        let dual = quadratic_dual(&a)?;
        check(same_presentation(&dual, &b), || format!("{name} {d}: A! differs from B(-δ)"))?;
        check(same_presentation(&quadratic_dual(&dual)?, &a), || format!("{name} {d}: A!! differs from A"))?;
        count += 1;
    }
    Ok(format!("{count} pairs"))
}

fn opposite_identity() -> Outcome {
    let mut count = 0;
    for (name, x, d) in pairs() {
        let b = QuadraticQuiverAlgebra::equivalence_algebra(&x, &d);
        let b_neg = QuadraticQuiverAlgebra::equivalence_algebra(&x, &d.negate());
        check(same_presentation(&b, &opposite(&b_neg)), || format!("{name} {d}: B(δ) differs from B(-δ)^op"))?;
        count += 1;
    }
    Ok(format!("{count} pairs"))
}

fn round_trips() -> Outcome {
    let (mut modules, mut chains, mut handmade) = (0, 0, 0);
    for (name, x, d) in pairs() {
        let ctx = SheafContext::new(x.clone(), &d)?;
        let b = ctx.equivalence_algebra();
        let budget = budget_for(&x);
        let quiver = ctx.quiver();
        let comparable: Vec<(usize, usize)> = (0..quiver.len())
            .flat_map(|s| (0..quiver.len()).map(move |t| (s, t)))
            .filter(|&(s, t)| poset_leq(quiver, s, t))
            .collect();
        for seed in 0..50 {
            let m = random_module(&b, seed, &budget)?;
            for &(s, t) in &comparable {
                composite_map(&m, s, t).map_err(|e| format!("{name} {d} seed {seed}: {e}"))?;
                chains += 1;
            }
            let s = ctx.phi(&m).map_err(|e| format!("{name} {d} seed {seed}: {e}"))?;
            check(ctx.psi(&s)? == m, || format!("{name} {d} seed {seed}: psi(phi(M)) != M"))?;
            modules += 1;
        }
        // Objects written directly on the subdivision.
        let flags = ctx.flag_quiver().clone();
        let mut candidates = vec![CellularData::constant(flags.clone()), CellularData::zero(flags.clone())];
        for s in x.ids() {
            candidates.push(skyscraper(&ctx, s, 2));
        }
        for data in candidates {
            let Ok(t) = ctx.sobject(data) else { continue };
            check(ctx.phi(&ctx.psi(&t)?)? == t, || format!("{name} {d}: phi(psi(T)) != T"))?;
            handmade += 1;
        }
    }
    Ok(format!("{modules} modules, {chains} composites chain-independent, {handmade} direct objects"))
}

/// Stalk `F^dim` on the flags anchored at `s`, identity maps among them,
/// zero everywhere else.
fn skyscraper(ctx: &SheafContext, s: usize, dim: usize) -> CellularData {
    let flags = ctx.flag_quiver();
    let anchor = |f: usize| ctx.dual_triangulation().anchor(f);
    let stalks: Vec<usize> = (0..flags.len()).map(|f| if anchor(f) == s { dim } else { 0 }).collect();
    let maps =
        flags
            .arrows()
            .iter()
            .map(|&(g, h)| {
                if stalks[g] > 0 && stalks[h] > 0 {
                    Matrix::identity(dim)
                } else {
                    Matrix::zeros(stalks[h], stalks[g])
                }
            })
            .collect();
    CellularData::new(flags.clone(), stalks, maps).unwrap()
}

fn tea_versus_relations() -> Outcome {
    let all = pairs();
    let contexts: Vec<(QuadraticQuiverAlgebra, ModuleBudget)> = all
        .iter()
        .map(|(_, x, d)| {
            (
                QuadraticQuiverAlgebra::equivalence_algebra(x, d),
                ModuleBudget { max_multiplicity: 1, relations: 2, coefficient_bound: 2 },
            )
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut valid, mut invalid) = (0, 0);
    for k in 0..1000 {
        let (b, budget) = &contexts[k % contexts.len()];
        let mut m = random_module_with(b, &mut rng, budget)?;
        if rng.random_bool(0.5) {
            mutate(&mut m, &mut rng);
        }
        let tea = validate_tea(&m).is_none();
        let module = check_module(b, &m)?.is_none();
        check(tea == module, || format!("assignment {k} on {}: TEA {tea}, relations {module}", b.label()))?;
        if tea {
            valid += 1
        } else {
            invalid += 1
        }
    }
    check(valid > 0 && invalid > 0, || "assignments were all of one kind".into())?;
    Ok(format!("1000 assignments agree ({valid} satisfy both, {invalid} fail both)"))
}

/// Perturb one entry of one nonempty map.
fn mutate(m: &mut CellularData, rng: &mut ChaCha8Rng) {
    let nonempty: Vec<usize> = (0..m.maps().len()).filter(|&a| m.map(a).rows() * m.map(a).cols() > 0).collect();
    if nonempty.is_empty() {
        return;
    }
    let a = nonempty[rng.random_range(0..nonempty.len())];
    let mut matrix = m.map(a).clone();
    let (r, c) = (rng.random_range(0..matrix.rows()), rng.random_range(0..matrix.cols()));
    let bump = if rng.random_bool(0.5) { q(1) } else { q(-2) };
    matrix.set(r, c, matrix.get(r, c) + bump);
    m.set_map(a, matrix).unwrap();
}

fn koszulity() -> Outcome {
    let mut count = 0;
    for (name, x, d) in pairs() {
        for alg in
            [QuadraticQuiverAlgebra::chain_complex_algebra(&x, &d), QuadraticQuiverAlgebra::equivalence_algebra(&x, &d)]
        {
            let report = koszulity_check(&alg)?;
            check(report.koszul, || format!("{name} {}: {:?}", alg.label(), report.reason))?;
            let gl = report.global_dimension.unwrap_or(0) as i64;
            check(gl <= d.width(), || format!("{name} {}: global dimension {gl} exceeds {}", alg.label(), d.width()))?;
            count += 1;
        }
    }
    Ok(format!("{count} algebras with linear resolutions"))
}

fn ext_dimensions() -> Outcome {
    let mut count = 0;
    for (name, x, d) in pairs() {
        let a = QuadraticQuiverAlgebra::chain_complex_algebra(&x, &d);
        let b = QuadraticQuiverAlgebra::equivalence_algebra(&x, &d);
        let report = ext_vs_dual(&a, &b)?;
        check(report.matches, || format!("{name} {d}: {:?}", report.mismatches.first()))?;
        count += 1;
    }
    Ok(format!("{count} pairs match"))
}

fn desk_numbers() -> Outcome {
    let triangle = fixtures::triangle();
    let sphere = fixtures::tetrahedron_boundary();
    let top = Perversity::top(2);
    let (ot, os) = (Oracle::full(2), Oracle::boundary(3));

    check(triangle.subdivision().len() == 25 && ot.flag_count() == 25, || "flag count".into())?;
    let arrows = Quiver::of_complex(&triangle, &top).arrows().len();
    check(arrows == 9 && ot.arrows(top.values()).len() == 9, || format!("arrows {arrows}"))?;
    let a = QuadraticQuiverAlgebra::chain_complex_algebra(&triangle, &top);
    let dims = a.hilbert_series()?;
    check(dims == [7, 9, 3] && ot.graded_dims(top.values(), false) == dims, || format!("A dims {dims:?}"))?;
    check(a.dimension()? == 19, || "dim A".into())?;
    let a = QuadraticQuiverAlgebra::chain_complex_algebra(&sphere, &top);
    let dims = a.hilbert_series()?;
    check(dims == [14, 24, 12] && os.graded_dims(top.values(), false) == dims, || format!("sphere A dims {dims:?}"))?;
    check(a.dimension()? == 50, || "dim A sphere".into())?;
    Ok("25 flags, 9 arrows, [7,9,3] = 19, [14,24,12] = 50".into())
}

fn negative_fixtures() -> Outcome {
    let x = fixtures::triangle();
    let quiver = Arc::new(Quiver::of_complex(&x, &Perversity::top(2)));
    let mut obj = CellularData::constant(quiver.clone());
    let [abc, ab, ac, a] = ["abc", "ab", "ac", "a"].map(|k| quiver.node_by_name(k).unwrap());
    obj.set_map(quiver.arrow_id(abc, ab).unwrap(), Matrix::scalar(1, q(2)))?;
    let w = validate_tea(&obj).ok_or("mutated diamond accepted")?;
    check((w.source, w.left, w.right, w.target) == (abc, ab, ac, a), || format!("witness {}", w.describe(&quiver)))?;
    check(w.residual == Matrix::from_i64(&[&[1]]), || "residual".into())?;

    let cases: [(&[i64], PerversityError); 4] = [
        (&[0, 1, 1], PerversityError::NotIntervalStep { index: 2, value: 1, up: 2, down: -1 }),
        (&[0, 2], PerversityError::NotIntervalStep { index: 1, value: 2, up: 1, down: -1 }),
        (&[0, -1, 1, 1], PerversityError::NotIntervalStep { index: 3, value: 1, up: 2, down: -2 }),
        (&[1, 0], PerversityError::NonzeroStart(1)),
    ];
    for (values, expected) in cases {
        let got = Perversity::new(values.to_vec());
        check(got == Err(expected.clone()), || format!("{values:?}: {got:?}"))?;
    }

    let mutant = koszulity_check(&fixtures::inhomogeneous_mutant())?;
    check(!mutant.koszul, || "mutant algebra passed".into())?;
    Ok("diamond abc -> {ab, ac} -> a, 4 sequences, mutant algebra".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("perversity reduction", reduction),
        ("partition and components", partition_and_components),
        ("quadratic duality", quadratic_duality),
        ("opposite identity", opposite_identity),
        ("round-trip functors", round_trips),
        ("equivalence axiom vs relations", tea_versus_relations),
        ("koszulity", koszulity),
        ("ext vs dual dimensions", ext_dimensions),
        ("desk numbers", desk_numbers),
        ("negative fixtures", negative_fixtures),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name} ({detail}) [{secs:.2}s]", i + 1),
            Err(why) => {
                println!("criterion {:>2} FAIL {name}: {why} [{secs:.2}s]", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
