//! Acceptance suite: one line per criterion, nonzero exit if any fails.

mod common;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::*;
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tropicon::connectivity::{
    build_hypergraph, connected_after_removal, is_k_connected, min_facet_cut, FacetRidgeHypergraph, MinCut,
    SearchOptions,
};
use tropicon::generators;
use tropicon::io::FanFile;
use tropicon::matroid::Matroid;
use tropicon::polyhedral::{dual_description, primal_description, Cell};
use tropicon::ratlin::{kernel, lp_feasible, rank_of, rat, LinearProgram, Relation};
use tropicon::tropical::{
    balancing_check, hyperplane_section, normal_fan, quotient_by_lineality, skeleton, star,
    witness_hyperplane, AffineHyperplane,
};
use tropicon::{Complex, Polyhedron, QVector};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, format!("took {t:?}, limit {limit:?}"))
}

fn hypergraph(c: &Complex) -> FacetRidgeHypergraph {
    build_hypergraph(c).unwrap()
}

/// `d - ℓ` for a complex.
fn bound(c: &Complex) -> usize {
    c.dim() - c.lineality().dim()
}

fn opts() -> SearchOptions {
    SearchOptions::default()
}

fn cut_size(c: &Complex) -> Option<usize> {
    min_facet_cut(&hypergraph(c), &opts()).unwrap().size()
}

fn cube_fan() -> Complex {
    generators::normal_fan_cube(3).unwrap()
}

fn k4() -> Complex {
    generators::bergman_graphic(&k4_edges()).unwrap()
}

fn uniform(r: usize, n: usize) -> Complex {
    generators::bergman_uniform(r, n).unwrap()
}

fn two_planes_regression() -> Outcome {
    let start = Instant::now();
    let text = FanFile::from_complex(&generators::two_planes()).to_json_string();
    let fan = FanFile::parse(&text).unwrap().to_complex().unwrap();
    let h = hypergraph(&fan);
    let c2 = is_k_connected(&h, 2, &opts()).unwrap();
    ensure(!c2.verdict, "k=2 verdict should be false")?;
    let w = c2.witness.clone().unwrap();
    ensure(w.len() == 1, "witness should have one facet")?;
    let e1 = v(&[1, 0, 0, 0, 0]);
    ensure(
        fan.facet_polyhedron(w[0]).rays().contains(&e1),
        "witness facet lacks e1",
    )?;
    ensure(!connected_after_removal(&h, &w), "witness does not disconnect")?;
    ensure(is_k_connected(&h, 1, &opts()).unwrap().verdict, "k=1 should hold")?;
    let cut = min_facet_cut(&h, &opts()).unwrap();
    ensure(cut.size() == Some(1), format!("mincut {cut:?}"))?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("witness facet {} = {}", w[0], fan.facet_polyhedron(w[0])))
}

fn bound_suite() -> Outcome {
    let start = Instant::now();
    let mut cases: Vec<(String, Complex, usize)> = vec![
        ("U(2,3)".into(), uniform(2, 3), 1),
        ("U(3,4)".into(), uniform(3, 4), 2),
        ("U(4,5)".into(), uniform(4, 5), 3),
        ("K4".into(), k4(), 2),
        ("cube fan".into(), cube_fan(), 3),
        ("cube 2-skeleton".into(), skeleton(&cube_fan(), 2).unwrap(), 2),
    ];
    for (i, pts) in random_3_polytopes(5, 7).into_iter().enumerate() {
        cases.push((format!("random polytope {i}"), normal_fan(&pts).unwrap(), 3));
    }
    let mut facets_u45 = 0;
    for (name, c, k) in &cases {
        ensure(bound(c) == *k, format!("{name}: d - l = {} not {k}", bound(c)))?;
        let h = hypergraph(c);
        let cert = is_k_connected(&h, *k, &opts()).unwrap();
        ensure(
            cert.verdict,
            format!("{name} is not {k}-connected: {:?}", cert.witness),
        )?;
        let expected = num_subsets(h.num_facets(), k - 1);
        ensure(
            cert.subsets_examined as u128 == expected,
            format!("{name}: examined {} of {expected}", cert.subsets_examined),
        )?;
        if name == "U(4,5)" {
            facets_u45 = h.num_facets();
        }
    }
    ensure(facets_u45 == 60, format!("U(4,5) has {facets_u45} facets"))?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("{} complexes verified exhaustively", cases.len()))
}

fn num_subsets(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |a, i| a * (n - i) as u128 / (i as u128 + 1))
}

fn sharpness() -> Outcome {
    let cases = [
        ("U(2,3)", uniform(2, 3), 1),
        ("U(3,4)", uniform(3, 4), 2),
        ("cube fan", cube_fan(), 3),
        ("cube 2-skeleton", skeleton(&cube_fan(), 2).unwrap(), 2),
    ];
    for (name, c, want) in &cases {
        let got = cut_size(c);
        ensure(got == Some(*want), format!("{name}: mincut {got:?}, want {want}"))?;
        ensure(bound(c) == *want, format!("{name}: bound {}", bound(c)))?;
    }
    Ok("mincut = d - l on all four".into())
}

fn star_property() -> Outcome {
    let m = Arc::new(Matroid::graphic(&k4_edges()).unwrap());
    let fan = bergman(&m);
    for e in 0..m.ground_size() {
        let face = flat_ray(&m, e);
        let got = star(&fan, &face).unwrap();
        let expected = quotient_by_lineality(&embedded_contraction_fan(&m, e)).unwrap().0;
        ensure(got.same_facets(&expected), format!("star at element {e} differs"))?;
        ensure(
            got.facets().len() == expected.facets().len(),
            "facet counts differ",
        )?;
    }
    Ok("6 stars match their contractions".into())
}

fn quotient_invariance() -> Outcome {
    for (name, c) in [("U(2,3)", uniform(2, 3)), ("U(3,4)", uniform(3, 4)), ("K4", k4())] {
        let (q, _) = quotient_by_lineality(&c).unwrap();
        ensure(q.lineality().is_zero(), format!("{name}: quotient not pointed"))?;
        ensure(q.dim() == bound(&c), format!("{name}: quotient dimension"))?;
        ensure(
            hypergraph(&c).same_incidence(&hypergraph(&q)),
            format!("{name}: incidence changed"),
        )?;
    }
    Ok("3 hypergraphs preserved".into())
}

fn balancing() -> Outcome {
    let mut fans = vec![
        ("U(2,3)".to_string(), uniform(2, 3)),
        ("U(3,4)".into(), uniform(3, 4)),
        ("U(4,5)".into(), uniform(4, 5)),
        ("K4".into(), k4()),
        ("two planes".into(), generators::two_planes()),
        ("tropical plane".into(), generators::tropical_plane()),
        ("cube fan".into(), cube_fan()),
        (
            "triangle fan".into(),
            normal_fan(&[v(&[0, 0]), v(&[1, 0]), v(&[0, 1])]).unwrap(),
        ),
    ];
    for (i, pts) in random_3_polytopes(5, 7).into_iter().enumerate() {
        fans.push((format!("random polytope {i}"), normal_fan(&pts).unwrap()));
    }
    for (name, c) in &fans {
        let r = balancing_check(c).unwrap();
        ensure(r.is_balanced(), format!("{name} unbalanced"))?;
    }
    let line = generators::tropical_line();
    let heavy = Complex::new(
        2,
        vec![],
        line.rays().to_vec(),
        vec![],
        (0..3).map(|i| Cell::cone(vec![i])).collect(),
        Some(vec![1, 1, 2]),
    )
    .unwrap();
    let r = balancing_check(&heavy).unwrap();
    let bad: Vec<_> = r.failures().collect();
    ensure(bad.len() == 1, "perturbed line should fail at one ridge")?;
    let want = vec![BigInt::from(-1), BigInt::from(-1)];
    ensure(bad[0].residual == want, format!("residual {:?}", bad[0].residual))?;
    Ok(format!(
        "{} fans balanced; perturbed line residual (-1,-1)",
        fans.len()
    ))
}

fn sections() -> Outcome {
    let h = AffineHyperplane::new(v(&[1, 2, 4]), rat(1, 1)).unwrap();
    let r = hyperplane_section(&generators::tropical_plane(), &h).unwrap();
    let g = hypergraph(&r.section);
    ensure(r.pure && r.section.dim() == 1, "section not a pure 1-complex")?;
    ensure(
        g.num_facets() == 6 && g.num_ridges() == 3,
        format!("{} facets, {} ridges", g.num_facets(), g.num_ridges()),
    )?;
    ensure(g.is_connected(), "plane section disconnected")?;

    let h = AffineHyperplane::new(v(&[1, 0, 0, 0, 0]), rat(-1, 1)).unwrap();
    let r = hyperplane_section(&generators::two_planes(), &h).unwrap();
    let comps = hypergraph(&r.section).components();
    ensure(comps == 2, format!("two-planes section has {comps} components"))?;
    Ok("6 facets / 3 ridges / connected; 2 components".into())
}

fn separation() -> Outcome {
    let start = Instant::now();
    let cone = |a: &[i64], b: &[i64]| Polyhedron::cone(5, vec![v(a), v(b)], vec![]).unwrap();
    let p = cone(&[0, 1, 0, 0, 0], &[0, 0, 1, 0, 0]);
    let q = cone(&[0, 0, 0, 1, 0], &[0, 0, 0, 0, 1]);
    let f = cone(&[1, 0, 0, 0, 0], &[0, 1, 0, 0, 0]);
    let w = witness_hyperplane(&p, &q, &f)
        .unwrap()
        .ok_or("no witness for the two-planes triple")?;
    ensure(witness_holds(&p, &q, &f, &w), "witness fails substitution")?;

    let seg = |a: i64, b: i64| Polyhedron::polytope(1, vec![v(&[a]), v(&[b])]).unwrap();
    let none = witness_hyperplane(&seg(0, 1), &seg(2, 3), &seg(1, 2)).unwrap();
    ensure(none.is_none(), "interval triple should have no witness")?;
    within(start, Duration::from_secs(1))?;
    Ok(format!(
        "h = {}, c = {}",
        w.hyperplane.normal, w.hyperplane.offset
    ))
}

fn random_rational(rng: &mut ChaCha8Rng) -> tropicon::Rational {
    rat(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

fn kernel_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for trial in 0..200 {
        let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let rows: Vec<QVector> = (0..r)
            .map(|_| {
                (0..c)
                    .map(|_| {
                        if rng.gen_bool(0.3) {
                            rat(0, 1)
                        } else {
                            random_rational(&mut rng)
                        }
                    })
                    .collect()
            })
            .collect();
        let k = kernel(&rows, c);
        ensure(
            rank_of(&rows, c) + k.len() == c,
            format!("matrix {trial}: rank-nullity"),
        )?;
        ensure(
            k.iter().all(|x| rows.iter().all(|row| row.dot(x).is_zero())),
            format!("matrix {trial}: kernel not annihilated"),
        )?;
    }
    let mut lp_witnesses = 0;
    for trial in 0..50 {
        let n = rng.gen_range(1..=4);
        let gens: Vec<QVector> = (0..rng.gen_range(1..=5))
            .map(|_| (0..n).map(|_| rat(rng.gen_range(-3..=3), 1)).collect::<QVector>())
            .filter(|g| !g.is_zero())
            .collect();
        let cone = Polyhedron::cone(n, gens, vec![]).unwrap();
        let back = primal_description(&dual_description(&cone)).unwrap();
        ensure(back == cone, format!("cone {trial}: V-H-V round trip"))?;
        ensure(
            cone.rays().iter().all(|r| back.contains_point(r)),
            format!("cone {trial}: generator lost"),
        )?;

        let mut lp = LinearProgram::new(n);
        for (a, b) in &dual_description(&cone).inequalities {
            lp.add(a.clone(), Relation::Ge, b.clone()).unwrap();
        }
        let target: QVector = (0..n).map(|_| random_rational(&mut rng)).collect();
        lp.add(target.clone(), Relation::Gt, rat(1, 1)).unwrap();
        if let Some(x) = lp_feasible(&lp) {
            ensure(lp.is_satisfied_by(&x), format!("cone {trial}: LP witness fails"))?;
            lp_witnesses += 1;
        }
    }
    Ok(format!(
        "200 matrices, 50 cones, {lp_witnesses} LP witnesses substituted"
    ))
}

fn consistency() -> Outcome {
    let mut fans = vec![
        ("two planes", generators::two_planes()),
        ("tropical plane", generators::tropical_plane()),
        ("U(2,3)", uniform(2, 3)),
        ("U(3,4)", uniform(3, 4)),
        ("K4", k4()),
        ("cube fan", cube_fan()),
        ("cube 2-skeleton", skeleton(&cube_fan(), 2).unwrap()),
    ];
    fans.push(("cube 1-skeleton", skeleton(&cube_fan(), 1).unwrap()));
    for (name, c) in &fans {
        let h = hypergraph(c);
        let s = match min_facet_cut(&h, &opts()).unwrap() {
            MinCut::Cut { size, .. } => size,
            MinCut::NoCut => h.num_facets() - 1,
        };
        for k in 1..=s + 1 {
            let verdict = is_k_connected(&h, k, &opts()).unwrap().verdict;
            ensure(
                verdict == (k <= s),
                format!("{name}: k = {k}, cut {s}, verdict {verdict}"),
            )?;
        }
    }
    Ok(format!("{} fans consistent", fans.len()))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("two-planes regression", two_planes_regression),
        ("(d - l)-connectivity suite", bound_suite),
        ("sharpness of the bound", sharpness),
        ("star equals contraction", star_property),
        ("quotient invariance", quotient_invariance),
        ("balancing", balancing),
        ("hyperplane sections", sections),
        ("separating hyperplane witness", separation),
        ("kernel, round trip and LP properties", kernel_properties),
        ("mincut consistency", consistency),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({detail}) [{t:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{t:.2?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
