//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! with its measured time against a pinned limit.
//!
//! Every check returns a deterministic text report alongside its verdict;
//! criterion 10 reruns the others and compares those reports byte for byte.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use component_lattice::arrangement::{
    cells, cone_from_bounds, sign_vector_of, tits_compose, Bound, HyperplaneArrangement, Sign, SignVector,
};
use component_lattice::cli;
use component_lattice::linmoduli::{self, subspaces, Field, QuiverSpec};
use component_lattice::qlinalg::{kernel, primitive_direction, qvec, span, Covector, QVector, Rational, Subspace};
use component_lattice::stackmodel::{self, catalog, Face, QuotientStackSpec};

struct Verdict {
    passed: bool,
    report: String,
}

fn verdict(passed: bool, report: String) -> Verdict {
    Verdict { passed, report }
}

fn run_criterion(id: u32, name: &str, limit: Duration, f: fn() -> Verdict) {
    let start = Instant::now();
    let v = f();
    let elapsed = start.elapsed();
    let in_time = elapsed <= limit;
    let status = if v.passed && in_time { "PASS" } else { "FAIL" };
    println!(
        "criterion {id:>2} {name}: {status} ({:.3} s, limit {:.1} s)",
        elapsed.as_secs_f64(),
        limit.as_secs_f64()
    );
    for line in v.report.lines().take(12) {
        println!("    {line}");
    }
    assert!(v.passed, "criterion {id} failed:\n{}", v.report);
    assert!(in_time, "criterion {id} took {elapsed:?}, limit {limit:?}");
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn spec_file(dir: &std::path::Path, text: &str) -> String {
    let p = dir.join("spec.json");
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

const A2_GL2: &str = r#"{"type":"linear_quotient","rank":2,"weights":[[1,0],[0,1]],
    "roots":[[1,-1],[-1,1]],"weyl_generators":[[[0,1],[1,0]]]}"#;

// ---------------------------------------------------------------- 1

/// The thirteen cells of A²/GL(2): a representative ray, the label of its
/// graded component and the label of its filtered component.
const CELL_LABELS: [([i64; 2], &str, &str); 13] = [
    ([-1, 1], "*/T", "V2/Bbar"),
    ([0, 1], "V1/T", "V/Bbar"),
    ([1, 2], "*/T", "V/Bbar"),
    ([1, 1], "*/G", "V/G"),
    ([2, 1], "*/T", "V/B"),
    ([1, 0], "V2/T", "V/B"),
    ([1, -1], "*/T", "V1/B"),
    ([0, -1], "V1/T", "V1/B"),
    ([-1, -2], "*/T", "*/B"),
    ([-1, -1], "*/G", "*/G"),
    ([-2, -1], "*/T", "*/Bbar"),
    ([-1, 0], "V2/T", "V2/Bbar"),
    ([0, 0], "V/G", "V/G"),
];

/// Translates a label `space/group` into (weights, roots) of A²/GL(2):
/// `V1` and `V2` hold the weights e1 and e2; `T` has no roots, `B` the
/// root e1 - e2, `Bbar` the root e2 - e1 and `G` both.
fn decode_label(label: &str) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let (space, group) = label.split_once('/').unwrap();
    let weights = match space {
        "*" => vec![],
        "V1" => vec![vec![1, 0]],
        "V2" => vec![vec![0, 1]],
        "V" => vec![vec![0, 1], vec![1, 0]],
        _ => panic!("unknown space {space}"),
    };
    let roots = match group {
        "T" => vec![],
        "B" => vec![vec![1, -1]],
        "Bbar" => vec![vec![-1, 1]],
        "G" => vec![vec![-1, 1], vec![1, -1]],
        _ => panic!("unknown group {group}"),
    };
    (weights, roots)
}

fn small(vs: &[Vec<BigInt>]) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vs
        .iter()
        .map(|v| v.iter().map(|x| i64::try_from(x).unwrap()).collect())
        .collect();
    out.sort();
    out
}

fn fig1() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let path = spec_file(dir.path(), A2_GL2);
    let (code, out) = cli::run(["component-lattice", "faces", &path]);
    let report: Value = serde_json::from_str(&out).unwrap();
    let res = &report["results"];
    let cells = res["cells"]["total"].as_u64().unwrap();
    let orbits = res["cells"]["orbit_count"].as_u64().unwrap();
    let faces = res["face_orbit_count"].as_u64().unwrap();
    let mut text =
        format!("exit {code}; cells {cells} (want 13), cell orbits {orbits} (want 8), face orbits {faces} (want 4)\n");
    let mut ok = code == 0 && cells == 13 && orbits == 8 && faces == 4;

    let spec = catalog::a2_gl2();
    let mut seen_cells = BTreeSet::new();
    for (ray, grad, filt) in CELL_LABELS {
        let v = qvec(&ray);
        let comp = stackmodel::component_signature(&spec, &Face::ray(v.clone())).unwrap();
        let att = stackmodel::special_cone_closure(&spec, std::slice::from_ref(&v)).unwrap();
        let got_grad = (small(&comp.fixed_weights), small(&comp.levi_roots));
        let got_filt = (small(&att.attractor_weights), small(&att.parabolic_roots));
        let good = got_grad == decode_label(grad) && got_filt == decode_label(filt);
        ok &= good;
        seen_cells.insert(sign_vector_of(spec.global_arrangement(), &v).unwrap());
        writeln!(
            text,
            "ray {ray:?}: Grad {grad} Filt {filt}: {}",
            if good { "match" } else { "MISMATCH" }
        )
        .unwrap();
    }
    ok &= seen_cells.len() == 13;
    writeln!(text, "distinct cells among representative rays: {}", seen_cells.len()).unwrap();
    verdict(ok, text)
}

#[test]
fn criterion_01_a2_gl2_cells_and_signatures() {
    run_criterion(1, "A2/GL(2) cells, orbits and signatures", Duration::from_secs(1), fig1);
}

// ---------------------------------------------------------------- 2

/// Every polyhedral cone in Q¹, as (contains 1, contains -1).
const LINE_CONES: [(bool, bool); 4] = [(false, false), (true, false), (false, true), (true, true)];

fn a1_cones() -> Verdict {
    let spec = catalog::a1_gm();
    let mut special = Vec::new();
    let mut text = String::new();
    for (pos, neg) in LINE_CONES {
        let mut gens: Vec<QVector> = Vec::new();
        if pos {
            gens.push(qvec(&[1]));
        }
        if neg {
            gens.push(qvec(&[-1]));
        }
        let closure = stackmodel::special_cone_closure(&spec, &gens).unwrap();
        let line = !closure.lineality.is_empty();
        let cl = (
            line || closure.rays.contains(&vec![BigInt::from(1)]),
            line || closure.rays.contains(&vec![BigInt::from(-1)]),
        );
        writeln!(text, "cone {:?} -> closure {:?}", (pos, neg), cl).unwrap();
        if cl == (pos, neg) {
            special.push(cl);
        }
    }
    let want = vec![(false, false), (true, false), (true, true)];
    writeln!(text, "special cones {special:?} (want {{0}}, Q>=0, Q)").unwrap();
    verdict(special == want, text)
}

#[test]
fn criterion_02_a1_special_cones() {
    run_criterion(2, "A1/Gm special cones", Duration::from_millis(100), a1_cones);
}

// ---------------------------------------------------------------- 3

fn bounds_of(s: &SignVector) -> Vec<Bound> {
    s.signs()
        .iter()
        .map(|x| match x {
            Sign::Zero => Bound::Zero,
            Sign::Pos => Bound::NonNeg,
            Sign::Neg => Bound::NonPos,
        })
        .collect()
}

fn cell_point(arr: &HyperplaneArrangement, s: &SignVector) -> Vec<i64> {
    let p = cone_from_bounds(arr, &bounds_of(s)).unwrap().interior_point();
    p.iter().map(|x| i64::try_from(x).unwrap()).collect()
}

fn small_covectors(arr: &HyperplaneArrangement) -> Vec<Vec<i64>> {
    arr.covectors()
        .iter()
        .map(|c| c.entries().iter().map(|x| i64::try_from(x).unwrap()).collect())
        .collect()
}

fn signs(covectors: &[Vec<i64>], x: &[i64]) -> SignVector {
    SignVector(
        covectors
            .iter()
            .map(|c| match c.iter().zip(x).map(|(a, b)| a * b).sum::<i64>().signum() {
                0 => Sign::Zero,
                1 => Sign::Pos,
                _ => Sign::Neg,
            })
            .collect(),
    )
}

/// Sign vector of `M p + q` with `M` large enough that no nonzero entry of
/// `p`'s sign vector flips: the geometric meaning of the Tits product.
fn perturbed(covectors: &[Vec<i64>], p: &[i64], q: &[i64]) -> SignVector {
    let m = 1 + covectors
        .iter()
        .map(|c| c.iter().zip(q).map(|(a, b)| a * b).sum::<i64>().abs())
        .max()
        .unwrap_or(0);
    let x: Vec<i64> = p.iter().zip(q).map(|(a, b)| m * a + b).collect();
    signs(covectors, &x)
}

/// Checks every triple of cells: both bracketings agree and land on a cell;
/// every pair's product equals the perturbation oracle.
fn exhaustive_tits(arr: &HyperplaneArrangement) -> (usize, usize) {
    let cs = cells(arr).unwrap();
    let points: Vec<Vec<i64>> = cs.iter().map(|s| cell_point(arr, s)).collect();
    let covs = small_covectors(arr);
    let mut failures = 0;
    let index: BTreeMap<&SignVector, usize> = cs.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut table = vec![vec![usize::MAX; cs.len()]; cs.len()];
    for i in 0..cs.len() {
        for j in 0..cs.len() {
            let xy = tits_compose(&cs[i], &cs[j]).unwrap();
            match index.get(&xy) {
                Some(&k) if perturbed(&covs, &points[i], &points[j]) == xy => table[i][j] = k,
                _ => failures += 1,
            }
        }
    }
    if failures > 0 {
        return (0, failures);
    }
    let triples = cs.len().pow(3);
    for i in 0..cs.len() {
        for j in 0..cs.len() {
            for k in 0..cs.len() {
                if table[table[i][j]][k] != table[i][table[j][k]] {
                    failures += 1;
                }
            }
        }
    }
    (triples, failures)
}

/// Canonical primitive covectors with entries in `-m..=m`.
fn covectors(dim: usize, m: i64) -> Vec<Covector> {
    let mut out = BTreeSet::new();
    let width = (2 * m + 1) as usize;
    for code in 0..width.pow(dim as u32) {
        let mut c = code;
        let v: Vec<i64> = (0..dim)
            .map(|_| {
                let x = (c % width) as i64 - m;
                c /= width;
                x
            })
            .collect();
        if let Some(cv) = Covector::from_i64(&v) {
            out.insert(cv.entries().to_vec());
        }
    }
    out.into_iter().map(|e| Covector::new(e).unwrap()).collect()
}

fn subsets(n: usize, max: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize <= max)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

fn random_face_point<R: Rng>(rng: &mut R, arr: &HyperplaneArrangement) -> Vec<i64> {
    let n = arr.ambient_dim();
    let k = rng.gen_range(0..n.min(arr.len()) + 1);
    let chosen: Vec<Covector> = (0..k)
        .map(|_| arr.covectors()[rng.gen_range(0..arr.len())].clone())
        .collect();
    let flat = kernel(&chosen, n).unwrap();
    let mut p = vec![r(0, 1); n];
    for b in flat.basis() {
        let c = r(rng.gen_range(-3..=3), 1);
        for (x, y) in p.iter_mut().zip(b) {
            *x += &c * y;
        }
    }
    match primitive_direction(&p) {
        Some(v) => v.iter().map(|x| i64::try_from(x).unwrap()).collect(),
        None => vec![0; n],
    }
}

fn tits() -> Verdict {
    let mut text = String::new();
    let mut ok = true;
    let mut arrangements = 0;
    let mut triples = 0;
    let mut failures = 0;
    // Every arrangement of at most six hyperplanes among the small-entry
    // covectors in dimensions one and two, and of at most four in
    // dimension three.
    for (dim, m, max) in [(1, 1, 6), (2, 2, 6), (3, 1, 4)] {
        let pool = covectors(dim, m);
        for sub in subsets(pool.len(), max) {
            let arr = HyperplaneArrangement::new(dim, sub.iter().map(|&i| pool[i].clone()).collect()).unwrap();
            let (t, f) = exhaustive_tits(&arr);
            arrangements += 1;
            triples += t;
            failures += f;
        }
    }
    // Seeded five- and six-hyperplane arrangements in dimension three.
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let pool = covectors(3, 1);
    for _ in 0..100 {
        let size = rng.gen_range(5..=6);
        let mut chosen = BTreeSet::new();
        while chosen.len() < size {
            chosen.insert(rng.gen_range(0..pool.len()));
        }
        let arr = HyperplaneArrangement::new(3, chosen.iter().map(|&i| pool[i].clone()).collect()).unwrap();
        let (t, f) = exhaustive_tits(&arr);
        arrangements += 1;
        triples += t;
        failures += f;
    }
    writeln!(
        text,
        "exhaustive: {arrangements} arrangements, {triples} triples, {failures} failures"
    )
    .unwrap();
    ok &= failures == 0;

    let mut random_failures = 0;
    let mut random_triples = 0;
    for a in 0..10 {
        let dim = rng.gen_range(2..=5);
        let count = rng.gen_range(dim..=12);
        let cs: Vec<Covector> = (0..count)
            .filter_map(|_| Covector::from_i64(&(0..dim).map(|_| rng.gen_range(-3..=3)).collect::<Vec<_>>()))
            .collect();
        let arr = HyperplaneArrangement::new(dim, cs).unwrap();
        for _ in 0..1000 {
            let pts: Vec<Vec<i64>> = (0..3).map(|_| random_face_point(&mut rng, &arr)).collect();
            let covs = small_covectors(&arr);
            let s: Vec<SignVector> = pts.iter().map(|p| signs(&covs, p)).collect();
            let xy = tits_compose(&s[0], &s[1]).unwrap();
            let yz = tits_compose(&s[1], &s[2]).unwrap();
            let left = tits_compose(&xy, &s[2]).unwrap();
            let right = tits_compose(&s[0], &yz).unwrap();
            if perturbed(&covs, &pts[0], &pts[1]) != xy {
                random_failures += 1;
            }
            random_triples += 1;
            if left != right {
                random_failures += 1;
            }
        }
        writeln!(text, "random arrangement {a}: dim {dim}, {} hyperplanes", arr.len()).unwrap();
    }
    writeln!(text, "random: {random_triples} triples, {random_failures} failures").unwrap();
    ok &= random_failures == 0;
    verdict(ok, text)
}

#[test]
fn criterion_03_tits_associativity() {
    run_criterion(3, "Tits product associativity", Duration::from_secs(30), tits);
}

// ---------------------------------------------------------------- 4

fn global_covectors(spec: &QuotientStackSpec) -> Vec<Covector> {
    spec.weights()
        .iter()
        .chain(spec.roots())
        .filter_map(|w| Covector::new(w.clone()))
        .collect()
}

/// The smallest intersection of weight and root hyperplanes containing `f`.
fn closure_oracle(spec: &QuotientStackSpec, f: &Subspace) -> Subspace {
    let vanishing: Vec<Covector> = global_covectors(spec)
        .into_iter()
        .filter(|c| f.basis().iter().all(|b| c.pair(b) == r(0, 1)))
        .collect();
    kernel(&vanishing, spec.rank()).unwrap()
}

fn random_in<R: Rng>(rng: &mut R, flat: &Subspace) -> QVector {
    let mut p = vec![r(0, 1); flat.ambient_dim()];
    for b in flat.basis() {
        let c = r(rng.gen_range(-2..=2), 1);
        for (x, y) in p.iter_mut().zip(b) {
            *x += &c * y;
        }
    }
    p
}

fn random_flat<R: Rng>(rng: &mut R, spec: &QuotientStackSpec) -> Subspace {
    let cs = global_covectors(spec);
    let k = rng.gen_range(0..=cs.len().min(spec.rank()));
    let chosen: Vec<Covector> = (0..k).map(|_| cs[rng.gen_range(0..cs.len())].clone()).collect();
    kernel(&chosen, spec.rank()).unwrap()
}

fn closure_laws() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut text = String::new();
    let mut failures: BTreeMap<&str, usize> = BTreeMap::new();
    let mut faces = 0;
    let mut flats_hit = 0;
    for s in 0..5 {
        let spec = catalog::random_spec(&mut rng, 4, 8);
        writeln!(
            text,
            "spec {s}: rank {}, {} weights, {} roots, |W| = {}",
            spec.rank(),
            spec.weights().len(),
            spec.roots().len(),
            spec.group().len()
        )
        .unwrap();
        for _ in 0..100 {
            let flat = random_flat(&mut rng, &spec);
            let count = rng.gen_range(1..=flat.dim().max(1));
            let gens: Vec<QVector> = (0..count).map(|_| random_in(&mut rng, &flat)).collect();
            let f = span(&gens, spec.rank()).unwrap();
            let mut bigger = gens.clone();
            let other = random_flat(&mut rng, &spec);
            bigger.push(random_in(&mut rng, &other));
            let g = span(&bigger, spec.rank()).unwrap();
            faces += 1;

            let face = Face::Subspace(f.clone());
            let cl = stackmodel::special_face_closure(&spec, &face).unwrap().subspace;
            let cl_face = Face::Subspace(cl.clone());
            let mut fail = |what: &'static str, bad: bool| {
                if bad {
                    *failures.entry(what).or_insert(0) += 1;
                }
            };
            fail("oracle", cl != closure_oracle(&spec, &f));
            fail("extensive", !cl.contains_subspace(&f));
            fail(
                "idempotent",
                stackmodel::special_face_closure(&spec, &cl_face).unwrap().subspace != cl,
            );
            let cl_g = stackmodel::special_face_closure(&spec, &Face::Subspace(g))
                .unwrap()
                .subspace;
            fail("monotone", !cl_g.contains_subspace(&cl));
            let sig = stackmodel::component_signature(&spec, &face).unwrap();
            let sig_cl = stackmodel::component_signature(&spec, &cl_face).unwrap();
            fail("signature", !sig.same_component(&sig_cl));
            let rank = stackmodel::central_rank(&spec, &face).unwrap();
            fail("central rank >= dim", rank < f.dim());
            fail("central rank = dim iff flat", (rank == f.dim()) != (cl == f));
            fail("central rank = closure dim", rank != cl.dim());
            if cl == f {
                flats_hit += 1;
            }
        }
    }
    writeln!(text, "{faces} faces, {flats_hit} already flats, failures {failures:?}").unwrap();
    verdict(failures.is_empty() && faces == 500, text)
}

#[test]
fn criterion_04_closure_laws() {
    run_criterion(4, "special face closure laws", Duration::from_secs(60), closure_laws);
}

// ---------------------------------------------------------------- 5

fn hall_categories() -> Verdict {
    let mut ok = true;
    let mut text = String::new();
    for (name, spec) in [
        ("B Gm", catalog::bgm(1)),
        ("A1/Gm", catalog::a1_gm()),
        ("A2/GL(2)", catalog::a2_gl2()),
        ("B GL(3)", catalog::bgl(3)),
    ] {
        let cat = stackmodel::hall_category(&spec).unwrap();
        let rep = cat.check_associativity();
        ok &= rep.passed() && rep.triples > 0;
        writeln!(
            text,
            "{name}: {} objects, {} morphisms, {} triples, {} failures, {} unit failures",
            cat.objects.len(),
            cat.morphisms.len(),
            rep.triples,
            rep.failures.len(),
            rep.unit_failures.len()
        )
        .unwrap();
    }
    verdict(ok, text)
}

#[test]
fn criterion_05_hall_category_associativity() {
    run_criterion(
        5,
        "Hall category associativity",
        Duration::from_secs(60),
        hall_categories,
    );
}

// ---------------------------------------------------------------- 6

/// Gaussian binomial from the product formula.
fn q_binomial(n: u32, k: u32, q: u128) -> u128 {
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

fn counting_hall() -> Verdict {
    let mut ok = true;
    let mut text = String::new();
    let quivers = [
        ("one vertex", QuiverSpec::new(1, vec![]).unwrap()),
        ("A2", QuiverSpec::new(2, vec![(0, 1)]).unwrap()),
    ];
    for (name, quiver) in &quivers {
        for q in [2u8, 3] {
            let rep = linmoduli::verify_hall_associativity(quiver, q, 3).unwrap();
            ok &= rep.passed() && rep.triples > 0 && rep.flag_checks > 0;
            writeln!(
                text,
                "{name}, q = {q}: {} classes, {} triples, {} flag checks, {} failures",
                rep.classes,
                rep.triples,
                rep.flag_checks,
                rep.failures.len()
            )
            .unwrap();
        }
    }
    let pinned = [(2, 1, 2, 3u128), (4, 2, 2, 35)];
    for (n, k, q, want) in pinned {
        let got = subspaces(&Field::new(q as u8).unwrap(), n, k).len() as u128;
        ok &= got == want && q_binomial(n as u32, k as u32, q) == want;
        writeln!(text, "[{n},{k}]_{q} = {got} (want {want})").unwrap();
    }
    let mut mismatches = 0;
    for q in [2u8, 3, 4] {
        let f = Field::new(q).unwrap();
        for n in 0..=4 {
            for k in 0..=n {
                if subspaces(&f, n, k).len() as u128 != q_binomial(n as u32, k as u32, q as u128) {
                    mismatches += 1;
                }
            }
        }
    }
    ok &= mismatches == 0;
    writeln!(
        text,
        "subspace counts vs product formula, n <= 4, q in {{2,3,4}}: {mismatches} mismatches"
    )
    .unwrap();
    verdict(ok, text)
}

#[test]
fn criterion_06_counting_hall_associativity() {
    run_criterion(
        6,
        "counting Hall algebra associativity",
        Duration::from_secs(120),
        counting_hall,
    );
}

// ---------------------------------------------------------------- 7

fn cross_model() -> Verdict {
    let mut ok = true;
    let mut text = String::new();
    let a2 = QuiverSpec::new(2, vec![(0, 1)]).unwrap();
    let point = QuiverSpec::new(1, vec![]).unwrap();
    for (name, quiver, gamma, want) in [
        ("A2", &a2, vec![1, 1], 2),
        ("one vertex", &point, vec![1], 1),
        ("one vertex", &point, vec![2], 2),
    ] {
        let c = linmoduli::cross_check_special_faces(quiver, &gamma).unwrap();
        let stack: usize = c.stack_orbits.values().sum();
        let tuples: usize = c.tuples.values().sum();
        ok &= c.agrees() && stack == want && tuples == want;
        writeln!(
            text,
            "{name} gamma {gamma:?}: stack orbits {stack}, class tuples {tuples} (want {want})"
        )
        .unwrap();
    }
    verdict(ok, text)
}

#[test]
fn criterion_07_cross_model() {
    run_criterion(
        7,
        "stack and class-tuple special faces agree",
        Duration::from_secs(10),
        cross_model,
    );
}

// ---------------------------------------------------------------- 8

/// Set partitions of `0..n` as restricted growth strings, reduced to their
/// sorted block sizes.
fn partition_shapes(n: usize) -> BTreeSet<Vec<usize>> {
    fn go(i: usize, n: usize, blocks: &mut Vec<usize>, out: &mut BTreeSet<Vec<usize>>) {
        if i == n {
            let mut b = blocks.clone();
            b.sort();
            out.insert(b);
            return;
        }
        for j in 0..blocks.len() {
            blocks[j] += 1;
            go(i + 1, n, blocks, out);
            blocks[j] -= 1;
        }
        blocks.push(1);
        go(i + 1, n, blocks, out);
        blocks.pop();
    }
    let mut out = BTreeSet::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}

fn finiteness() -> Verdict {
    let mut ok = true;
    let mut text = String::new();
    for (n, want) in [(2, 2), (3, 3), (4, 5)] {
        let orbits = stackmodel::enumerate_special_faces(&catalog::bgl(n)).unwrap();
        let oracle = partition_shapes(n).len();
        ok &= orbits.len() == want && oracle == want;
        writeln!(
            text,
            "B GL({n}): {} face orbits, braid flats mod S_n {oracle} (want {want})",
            orbits.len()
        )
        .unwrap();
    }
    verdict(ok, text)
}

#[test]
fn criterion_08_finiteness() {
    run_criterion(
        8,
        "B GL(n) special faces are partitions",
        Duration::from_secs(30),
        finiteness,
    );
}

// ---------------------------------------------------------------- 9

fn constancy() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let random = loop {
        let s = catalog::random_spec(&mut rng, 3, 6);
        if s.rank() == 3 {
            break s;
        }
    };
    let mut ok = true;
    let mut text = String::new();
    for (name, spec) in [("A2/GL(2)", catalog::a2_gl2()), ("random rank 3", random)] {
        let mut chambers = 0;
        let mut samples = 0;
        let mut discrepancies = 0;
        for orbit in stackmodel::enumerate_special_faces(&spec).unwrap() {
            let face = &orbit.representative.subspace;
            if face.dim() == 0 {
                continue;
            }
            let rep = stackmodel::constancy_check(&spec, face, 200, 7).unwrap();
            chambers += rep.chambers.len();
            samples += rep.chambers.iter().map(|c| c.samples).sum::<usize>();
            discrepancies += rep.discrepancies();
            ok &= rep.chambers.iter().all(|c| c.samples > 0);
        }
        ok &= discrepancies == 0;
        writeln!(
            text,
            "{name}: {chambers} chambers, {samples} samples, {discrepancies} discrepancies"
        )
        .unwrap();
    }
    verdict(ok, text)
}

#[test]
fn criterion_09_constancy() {
    run_criterion(9, "signatures constant on chambers", Duration::from_secs(60), constancy);
}

// ---------------------------------------------------------------- 10

fn determinism() -> Verdict {
    let checks: [fn() -> Verdict; 9] = [
        fig1,
        a1_cones,
        tits,
        closure_laws,
        hall_categories,
        counting_hall,
        cross_model,
        finiteness,
        constancy,
    ];
    let mut ok = true;
    let mut text = String::new();
    for (i, f) in checks.iter().enumerate() {
        let (a, b) = (f().report, f().report);
        ok &= a == b;
        writeln!(
            text,
            "criterion {}: reports {}",
            i + 1,
            if a == b { "identical" } else { "DIFFER" }
        )
        .unwrap();
    }
    let dir = tempfile::tempdir().unwrap();
    let path = spec_file(dir.path(), A2_GL2);
    let cache = dir.path().join("cache").to_string_lossy().into_owned();
    let args = |cached: bool| {
        let mut v = vec![
            "component-lattice",
            "verify",
            &path,
            "--suite",
            "constancy",
            "--samples",
            "50",
            "--seed",
            "7",
        ];
        if cached {
            v.extend(["--cache-dir", &cache]);
        }
        v.into_iter().map(String::from).collect::<Vec<_>>()
    };
    let plain = cli::run(args(false));
    let cold = cli::run(args(true));
    let warm = cli::run(args(true));
    let same = plain == cold && cold == warm && plain.0 == 0;
    ok &= same;
    writeln!(
        text,
        "cli constancy report without, cold and warm cache: {}",
        if same { "identical" } else { "DIFFER" }
    )
    .unwrap();
    verdict(ok, text)
}

#[test]
fn criterion_10_determinism() {
    run_criterion(
        10,
        "byte-identical repeated reports",
        Duration::from_secs(300),
        determinism,
    );
}
