//! Acceptance suite: one PASS/FAIL line per criterion, exact rational
//! equality throughout. Exits non-zero if any criterion fails.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use toric_pick::agw::{verify_agw, verify_agw_with};
use toric_pick::cli::{corpus_files, load_polytope};
use toric_pick::exact::{det, rat, rat_int, IntMatrix, Rational};
use toric_pick::invariants::{
    check_face_todd, check_pick, check_tetrahedron, check_twisted_todd, check_u_independence,
    check_untwisted_signature, kahler_volume, twisted_todd, untwisted_genus, DelzantPolytope,
};
use toric_pick::lattice::{weighted_sum_closed, weighted_sum_relint};
use toric_pick::localization::partitions;
use toric_pick::polytope::signature_from_h;
use toric_pick::series::GenusKind;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

const EXPECTED_CORPUS: [&str; 14] = [
    "cp2",
    "cp2_2",
    "cp2_3",
    "cube",
    "hirzebruch",
    "interval1",
    "interval2",
    "interval5",
    "prism",
    "rect2x3",
    "simplex3",
    "simplex3_2",
    "square",
    "square2",
];

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn corpus() -> Vec<DelzantPolytope> {
    corpus_files(&corpus_dir())
        .expect("bundled corpus")
        .iter()
        .map(|p| load_polytope(p).unwrap_or_else(|f| panic!("{}", f.message)))
        .collect()
}

fn find<'a>(c: &'a [DelzantPolytope], name: &str) -> &'a DelzantPolytope {
    c.iter().find(|d| d.name() == name).unwrap_or_else(|| panic!("corpus entry {name} missing"))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn pick_identity(c: &[DelzantPolytope]) -> Outcome {
    for name in EXPECTED_CORPUS {
        find(c, name);
    }
    for dp in c {
        let rep = check_pick(dp).map_err(err)?;
        ensure(rep.holds, || format!("{}: {} != {}", dp.name(), rep.lhs, rep.rhs))?;
    }
    for (name, value) in [("square", rat(1, 1)), ("cp2", rat(3, 4)), ("simplex3", rat(1, 2)), ("simplex3_2", rat(2, 1))]
    {
        let rep = check_pick(find(c, name)).map_err(err)?;
        ensure(rep.lhs == value && rep.rhs == value, || {
            format!("{name}: got {} / {}, want {value}", rep.lhs, rep.rhs)
        })?;
    }
    Ok(format!("{} polytopes", c.len()))
}

fn danilov(c: &[DelzantPolytope]) -> Outcome {
    let mut faces = 0;
    for dp in c {
        let total = dp.counts().map_err(err)?.total();
        let todd = twisted_todd(dp).map_err(err)?;
        ensure(todd == rat_int(total), || format!("{}: Todd {todd} != count {total}", dp.name()))?;
        ensure(check_twisted_todd(dp).map_err(err)?.holds, || format!("{}: todd report", dp.name()))?;
        let rep = check_face_todd(dp).map_err(err)?;
        ensure(rep.holds, || format!("{}: {} of {} faces match", dp.name(), rep.lhs, rep.rhs))?;
        faces += dp.simple().faces().faces().len();
    }
    Ok(format!("{} polytopes, {faces} faces", c.len()))
}

fn classical_pick(c: &[DelzantPolytope]) -> Outcome {
    let mut n = 0;
    for dp in c.iter().filter(|d| d.dim() == 2) {
        let (u, _) = dp.localizer().generic_pair();
        let area = kahler_volume(dp, &u).map_err(err)?;
        let counts = dp.counts().map_err(err)?;
        let rhs = rat_int(counts.interior()) + rat(1, 2) * rat_int(counts.boundary()) - rat(1, 1);
        ensure(area == rhs, || format!("{}: area {area} != {rhs}", dp.name()))?;
        ensure(area == dp.simple().volume(), || format!("{}: localized area differs from triangulation", dp.name()))?;
        let constant = untwisted_genus(dp, GenusKind::SignatureHalf, &u).map_err(err)?;
        let m = dp.num_facets() as i64;
        ensure(constant == rat(4 - m, 4), || format!("{}: constant term {constant} != (4-{m})/4", dp.name()))?;
        let rep = check_pick(dp).map_err(err)?;
        ensure(rep.lhs == &area + rat(4 - m, 4), || format!("{}: lhs != Area + (4-m)/4", dp.name()))?;
        n += 1;
    }
    ensure(n >= 7, || format!("only {n} 2D polytopes"))?;
    Ok(format!("{n} 2D polytopes"))
}

fn random_unimodular(rng: &mut StdRng, n: usize) -> IntMatrix {
    let mut g = IntMatrix::identity(n);
    for _ in 0..4 {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            continue;
        }
        let s: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
        let mut e = IntMatrix::identity(n);
        e.set(i, j, s.into());
        g = e.mul(&g).unwrap();
    }
    if rng.gen_bool(0.5) {
        let mut flip = IntMatrix::identity(n);
        flip.set(0, 0, (-1).into());
        g = flip.mul(&g).unwrap();
    }
    g
}

fn tetrahedron(c: &[DelzantPolytope]) -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x7e7a);
    let mut checked = 0;
    for (name, value) in [("simplex3", rat(1, 2)), ("simplex3_2", rat(2, 1))] {
        let dp = find(c, name);
        let rep = check_tetrahedron(dp).map_err(err)?;
        ensure(rep.holds && rep.lhs == value, || format!("{name}: {} / {}, want {value}", rep.lhs, rep.rhs))?;
        for _ in 0..5 {
            let g = random_unimodular(&mut rng, 3);
            assert_eq!(det(&g).unwrap().magnitude(), &1u32.into());
            let t: Vec<i64> = (0..3).map(|_| rng.gen_range(-3..=3)).collect();
            let moved = dp.polytope().transformed(&g, &t).map_err(err)?;
            let dq = DelzantPolytope::new(moved).map_err(err)?;
            let rep = check_tetrahedron(&dq).map_err(err)?;
            ensure(rep.holds && rep.lhs == value, || format!("{name} under {g:?} + {t:?}: {} / {}", rep.lhs, rep.rhs))?;
            checked += 1;
        }
    }
    Ok(format!("2 simplices, {checked} transformed translates"))
}

fn gysin(c: &[DelzantPolytope]) -> Outcome {
    let s = find(c, "simplex3");
    let u = s.localizer().choose_generic();
    for j in 0..4 {
        let v = s.localizer().gysin_power(j, 3, &u).map_err(err)?;
        ensure(v == rat(1, 1), || format!("simplex3 facet {}: <x^3> = {v}", j + 1))?;
    }
    let mut pairs = 0;
    for dp in c.iter().filter(|d| d.dim() == 3) {
        let (u1, u2) = dp.localizer().generic_pair();
        for j in 0..dp.num_facets() {
            for u in [&u1, &u2] {
                let mu = dp.localizer().gysin_power(j, 3, u).map_err(err)?;
                let triple = dp.localizer().gysin_cube_triple_product(j, u).map_err(err)?;
                let mut e = vec![0; dp.num_facets()];
                e[j] = 3;
                let direct = dp.localizer().integrate_monomial(&e, u).map_err(err)?;
                ensure(mu == triple && mu == direct, || {
                    format!("{} facet {}: {mu} / {triple} / {direct}", dp.name(), j + 1)
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} facet evaluations"))
}

fn chern(c: &[DelzantPolytope]) -> Outcome {
    let mut numbers = 0;
    for dp in c {
        for w in partitions(dp.dim()) {
            let cn = dp.localizer().chern_number(&w).map_err(err)?;
            ensure(cn.fixed_point_route == cn.symmetric_route, || format!("{}: c{w} routes differ", dp.name()))?;
            numbers += 1;
        }
        let top = toric_pick::localization::Partition::new(vec![dp.dim() as u32]).map_err(err)?;
        let f0 = dp.simple().charts().len();
        let euler = dp.localizer().chern_number(&top).map_err(err)?.value;
        ensure(euler == f0.into(), || format!("{}: c_n = {euler}, f0 = {f0}", dp.name()))?;
    }
    for (name, c2, c11) in [("cp2", 3, 9), ("square", 4, 8)] {
        let loc = find(c, name).localizer();
        let got2 = loc.chern_number(&"2".parse().unwrap()).map_err(err)?.value;
        let got11 = loc.chern_number(&"1,1".parse().unwrap()).map_err(err)?.value;
        ensure(got2 == c2.into() && got11 == c11.into(), || format!("{name}: c2 = {got2}, c1^2 = {got11}"))?;
    }
    Ok(format!("{numbers} Chern numbers"))
}

fn localization(c: &[DelzantPolytope]) -> Outcome {
    for dp in c {
        let rep = check_u_independence(dp).map_err(err)?;
        ensure(rep.holds, || format!("{}: {} of {} quantities agree", dp.name(), rep.lhs, rep.rhs))?;
    }
    let mut rng = StdRng::seed_from_u64(0x10ca1);
    let (mut sub_top, mut disjoint) = (0, 0);
    for _ in 0..100 {
        let dp = &c[rng.gen_range(0..c.len())];
        let (n, m) = (dp.dim(), dp.num_facets());
        let degree = rng.gen_range(0..=n);
        let mut e = vec![0u32; m];
        for _ in 0..degree {
            e[rng.gen_range(0..m)] += 1;
        }
        let (u1, u2) = dp.localizer().generic_pair();
        let a = dp.localizer().integrate_monomial(&e, &u1).map_err(err)?;
        let b = dp.localizer().integrate_monomial(&e, &u2).map_err(err)?;
        ensure(a == b, || format!("{}: monomial {e:?} gives {a} and {b}", dp.name()))?;
        if degree < n {
            ensure(a.is_zero(), || format!("{}: sub-top monomial {e:?} gives {a}", dp.name()))?;
            sub_top += 1;
        }
        let support: Vec<usize> = (0..m).filter(|&i| e[i] > 0).collect();
        if dp.simple().faces().find(&support).is_none() {
            ensure(a.is_zero(), || format!("{}: disjoint support {support:?} gives {a}", dp.name()))?;
            disjoint += 1;
        }
    }
    ensure(sub_top > 0 && disjoint > 0, || "random monomials missed a case".into())?;
    Ok(format!("{} polytopes, 100 monomials ({sub_top} sub-top, {disjoint} disjoint)", c.len()))
}

fn weight_equivalence(c: &[DelzantPolytope]) -> Outcome {
    for dp in c {
        let counts = dp.counts().map_err(err)?;
        let (closed, relint) = (weighted_sum_closed(&counts), weighted_sum_relint(&counts));
        ensure(closed == relint, || format!("{}: {closed} != {relint}", dp.name()))?;
    }
    Ok(format!("{} polytopes", c.len()))
}

fn agw() -> Outcome {
    let rep = verify_agw().map_err(err)?;
    ensure(rep.holds, || format!("{} of {} coefficients match", rep.lhs, rep.rhs))?;
    let control = verify_agw_with(&rat(8, 1), &rat(31, 1)).map_err(err)?;
    ensure(!control.holds, || "negative control 32 -> 31 still holds".into())?;
    Ok("3 coefficients, control fails".into())
}

fn signature(c: &[DelzantPolytope]) -> Outcome {
    for dp in c {
        let n = dp.dim();
        let sigma = signature_from_h(&dp.simple().h_vector());
        let u = dp.localizer().choose_generic();
        let constant: Rational = untwisted_genus(dp, GenusKind::SignatureHalf, &u).map_err(err)?;
        ensure(rat_int(1i64 << n) * &constant == sigma, || format!("{}: 2^n * {constant} != {sigma}", dp.name()))?;
        ensure(check_untwisted_signature(dp).map_err(err)?.holds, || format!("{}: report", dp.name()))?;
        if n == 2 {
            let m = dp.num_facets() as i64;
            ensure(sigma == rat(4 - m, 1), || format!("{}: sigma {sigma} != 4 - {m}", dp.name()))?;
        }
    }
    Ok(format!("{} polytopes", c.len()))
}

fn main() -> ExitCode {
    let c = corpus();
    let criteria: Vec<Criterion> = vec![
        ("pick identity on the bundled corpus", Box::new(|| pick_identity(&c))),
        ("twisted Todd genus equals lattice count, every face", Box::new(|| danilov(&c))),
        ("classical 2D Pick and the (4-m)/4 term", Box::new(|| classical_pick(&c))),
        ("tetrahedron corollary and unimodular translates", Box::new(|| tetrahedron(&c))),
        ("facet cube integrals and triple-product form", Box::new(|| gysin(&c))),
        ("Chern numbers by both routes", Box::new(|| chern(&c))),
        ("localization properties", Box::new(|| localization(&c))),
        ("closed and relative-interior weights agree", Box::new(|| weight_equivalence(&c))),
        ("12-dimensional Pontryagin identity", Box::new(agw)),
        ("signature from h-vector", Box::new(|| signature(&c))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match std::panic::catch_unwind(std::panic::AssertUnwindSafe(run)) {
            Ok(Ok(detail)) => println!("criterion {:>2} PASS  {name} ({detail})", i + 1),
            Ok(Err(why)) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
            Err(_) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: panicked", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
