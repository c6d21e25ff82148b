//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. All comparisons are exact.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use acmq::algebra::{Polynomial, Rational};
use acmq::pfaffian::{determinant, pfaffian};
use acmq::picard::{
    add_reduced, scale_reduced, CohomologyFlags, DivisorClass, PicardLattice, StabilityKind, WatanabeCase,
};
use acmq::schemes::{self, gorenstein_symmetry, AgFailure, AgVerdict, Degree8Class, HilbertProfile};
use acmq::surface::{
    build_phi_n8, pfaffian_rep_from_quadrics, quadric_product_sum, smoothness_probe, verify_representation,
    PrimeVerdict, QuarticSurface, Representation,
};
use common::*;
use num_traits::One;
use rand::Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn pfaffian_squares() -> Check {
    let mut r = rng(1);
    let start = Instant::now();
    for k in 0..200 {
        let n = 2 * (k % 4 + 1);
        let m = random_skew_integer(&mut r, n);
        let pf = pfaffian(&m).map_err(|e| e.to_string())?;
        ensure(pf == pfaffian_by_matchings(&m), || format!("matrix {k}: expansion disagrees with matching sum"))?;
        let det = determinant(&m.to_full()).map_err(|e| e.to_string())?;
        ensure(&pf * &pf == det, || format!("matrix {k} (order {n}): pf^2 != det"))?;
    }
    let t = start.elapsed();
    within(t, Duration::from_secs(10))?;
    Ok(format!("200 matrices, orders 2..8, {t:.2?}"))
}

fn quadric_representation() -> Check {
    let mut r = rng(2);
    for k in 0..50 {
        let q: [Polynomial; 6] = std::array::from_fn(|_| random_rational_form(&mut r, 2));
        let m = pfaffian_rep_from_quadrics(&q).map_err(|e| e.to_string())?;
        let pf = pfaffian(&m).map_err(|e| e.to_string())?;
        let expected = &(&(&q[0] * &q[1]) + &(&q[2] * &q[3])) + &(&q[4] * &q[5]);
        ensure(pf == expected, || format!("sextuple {k}: pf != q1q2 + q3q4 + q5q6"))?;
        ensure(quadric_product_sum(&q) == expected, || format!("sextuple {k}: product sum"))?;
        let surface = QuarticSurface::new(expected).map_err(|e| e.to_string())?;
        let out = verify_representation(Representation::Pfaffian(&m), &surface).map_err(|e| e.to_string())?;
        ensure(out.lambda() == Some(&Rational::one()), || format!("sextuple {k}: {out:?}"))?;
    }
    Ok("50 sextuples, lambda = 1".into())
}

fn block_identity() -> Check {
    let mut r = rng(3);
    let mut signs = Vec::new();
    for k in 0..50 {
        let a = random_linear_matrix(&mut r);
        let det_a = determinant_by_permutations(&a);
        let mut sign_for_a = None;
        for _ in 0..2 {
            let b = random_skew_forms(&mut r, 4, 2);
            let blk = build_phi_n8(&b, &a).map_err(|e| e.to_string())?;
            ensure(blk.det_a == det_a, || format!("pair {k}: det(A) disagrees with Leibniz"))?;
            let s = blk.sign.ok_or_else(|| format!("pair {k}: det(A) = 0"))?;
            let scaled = det_a.scale(&Rational::from_integer(s.into()));
            ensure(blk.pfaffian == scaled, || format!("pair {k}: pf != {s} det(A)"))?;
            ensure(*sign_for_a.get_or_insert(s) == s, || format!("pair {k}: sign depends on B"))?;
        }
        signs.push(sign_for_a.unwrap());
    }
    ensure(signs.windows(2).all(|w| w[0] == w[1]), || format!("signs vary: {signs:?}"))?;
    Ok(format!("50 pairs x 2 choices of B, sign {:+}", signs[0]))
}

fn hilbert_profiles() -> Check {
    let tc = schemes::twisted_cubic_points_int(&[0, 1, 2, 3, 4, 5, 6, 7]).map_err(|e| e.to_string())?;
    for (name, e) in [("cube", schemes::cube_points()), ("twisted cubic", tc)] {
        let p = e.hilbert_profile();
        let hf: Vec<usize> = (0..5).map(|t| p.value(t)).collect();
        ensure(hf == [1, 4, 7, 8, 8], || format!("{name}: hf {hf:?}"))?;
        ensure(p.hvec == [1, 3, 3, 1], || format!("{name}: hvec {:?}", p.hvec))?;
        let oracle: Vec<usize> = (0..5).map(|t| hilbert_oracle(&point_coords(&e), t)).collect();
        ensure(oracle == hf, || format!("{name}: oracle hf {oracle:?}"))?;
    }
    let line = schemes::collinear_points(8).hilbert_profile();
    ensure(line.hvec == [1; 8], || format!("collinear hvec {:?}", line.hvec))?;
    Ok("hf (1,4,7,8), hvec (1,3,3,1); collinear hvec (1^8)".into())
}

fn point_coords(e: &schemes::PointScheme) -> Vec<[Rational; 4]> {
    e.points().iter().map(|p| p.coords().clone()).collect()
}

fn ag_classifier() -> Check {
    let start = Instant::now();
    let cube = schemes::cube_points();
    let tc = schemes::twisted_cubic_points_int(&[0, 1, 2, 3, 4, 5, 6, 7]).map_err(|e| e.to_string())?;
    let general = schemes::random_points(1, 8);
    let coplanar = schemes::random_coplanar_points(1, 8);
    for (name, e, class) in [("cube", &cube, Degree8Class::N4Type), ("twisted cubic", &tc, Degree8Class::N6Type)] {
        let ag = e.ag_check();
        ensure(ag.verdict == AgVerdict::Ag, || format!("{name}: {:?}", ag.failure))?;
        let c = e.classify_degree8().map_err(|e| e.to_string())?;
        ensure(c.class == class, || format!("{name}: classified {}", c.class.as_str()))?;
    }
    let ag = general.ag_check();
    ensure(ag.verdict == AgVerdict::NotAg && ag.failure == Some(AgFailure::Symmetry), || {
        format!("general points: {:?} {:?}", ag.verdict, ag.failure)
    })?;
    let c = general.classify_degree8().map_err(|e| e.to_string())?;
    ensure(c.class == Degree8Class::NotAg, || format!("general points classified {}", c.class.as_str()))?;
    let c = coplanar.classify_degree8().map_err(|e| e.to_string())?;
    ensure(c.class == Degree8Class::PlaneExcluded, || format!("coplanar classified {}", c.class.as_str()))?;
    let t = start.elapsed();
    within(t, Duration::from_secs(5))?;
    Ok(format!("cube n4-type, twisted cubic n6-type, general not-aG (symmetry), coplanar plane-excluded, {t:.2?}"))
}

fn cayley_bacharach() -> Check {
    let cube = schemes::cube_points().cayley_bacharach(2);
    ensure(cube.base_dimension == 3, || format!("cube base dimension {}", cube.base_dimension))?;
    ensure(cube.removal_dimensions == [3; 8], || format!("cube removals {:?}", cube.removal_dimensions))?;
    ensure(cube.holds(), || "cube: CB fails".into())?;
    let general = schemes::random_points(1, 8).cayley_bacharach(2);
    ensure(general.base_dimension == 2, || format!("general base dimension {}", general.base_dimension))?;
    ensure(general.removal_dimensions.contains(&3), || format!("general removals {:?}", general.removal_dimensions))?;
    ensure(!general.holds(), || "general points: CB holds".into())?;
    Ok(format!("cube 3 -> {:?}; general 2 -> {:?}", cube.removal_dimensions, general.removal_dimensions))
}

fn riemann_roch() -> Check {
    let flags = CohomologyFlags { h0_twice_difference_vanishes: true, ..CohomologyFlags::default() };
    for (dh, d2) in [(4, 0), (5, 2), (6, 4)] {
        let l = PicardLattice::rank_two(dh, d2).map_err(|e| e.to_string())?;
        let d = DivisorClass::basis(2, 1);
        let twice_diff = &(2 * &d) - &(2 * l.h());
        let chi = l.euler_characteristic(1, &twice_diff, 0).map_err(|e| e.to_string())?;
        ensure(chi == -6, || format!("({dh},{d2}): chi = {chi}"))?;
        let dim = l.extension_family_dim(&d, &flags).map_err(|e| e.to_string())?;
        ensure(dim == 6, || format!("({dh},{d2}): family dimension {dim}"))?;
    }
    Ok("chi(O(2D-2h)) = -6 and h1 = 6 for (4,0), (5,2), (6,4)".into())
}

fn watanabe_table() -> Check {
    let flags =
        CohomologyFlags { h0_d_minus_h_vanishes: true, h0_2h_minus_d_vanishes: true, ..CohomologyFlags::effective() };
    let table = [
        ((-2, 1), WatanabeCase::A),
        ((-2, 2), WatanabeCase::A),
        ((-2, 3), WatanabeCase::A),
        ((0, 3), WatanabeCase::B),
        ((0, 4), WatanabeCase::B),
        ((2, 5), WatanabeCase::C),
        ((4, 6), WatanabeCase::D),
    ];
    for ((d2, dh), expected) in table {
        let l = PicardLattice::rank_two(dh, d2).map_err(|e| e.to_string())?;
        let got = l.watanabe_classify(&DivisorClass::basis(2, 1), &flags).map_err(|e| e.to_string())?;
        ensure(got == expected, || format!("({d2},{dh}) -> {}", got.as_str()))?;
    }
    let l6 = PicardLattice::rank_two(6, 4).map_err(|e| e.to_string())?;
    let bare =
        l6.watanabe_classify(&DivisorClass::basis(2, 1), &CohomologyFlags::effective()).map_err(|e| e.to_string())?;
    ensure(bare == WatanabeCase::None, || format!("(4,6) without vanishing flags -> {}", bare.as_str()))?;
    let l1 = PicardLattice::rank_one();
    let got = l1.watanabe_classify(l1.h(), &flags).map_err(|e| e.to_string())?;
    ensure(got == WatanabeCase::None, || format!("(4,4) -> {}", got.as_str()))?;
    Ok("(-2,1..3) a, (0,3..4) b, (2,5) c, (4,6)+flags d, (4,4) none".into())
}

fn stability() -> Check {
    for ((dh, d2), expected) in [
        ((6, 4), StabilityKind::Unstable),
        ((5, 2), StabilityKind::Unstable),
        ((4, 0), StabilityKind::StrictlySemistable),
    ] {
        let l = PicardLattice::rank_two(dh, d2).map_err(|e| e.to_string())?;
        let v = l.stability_classify(&DivisorClass::basis(2, 1)).map_err(|e| e.to_string())?;
        ensure(v.kind == expected, || format!("(Dh,D^2) = ({dh},{d2}) -> {}", v.kind.as_str()))?;
    }
    let mut r = rng(9);
    for k in 0..100 {
        let (l, d) = random_lattice_with_c2_eight(&mut r);
        let rest = l.complement(&d);
        let lhs = add_reduced(
            &l.reduced_hilbert_poly(1, &d, 0).map_err(|e| e.to_string())?,
            &l.reduced_hilbert_poly(1, &rest, 0).map_err(|e| e.to_string())?,
        );
        let rhs = scale_reduced(&l.reduced_hilbert_poly(2, &(2 * l.h()), 8).map_err(|e| e.to_string())?, 2);
        ensure(lhs == rhs, || format!("lattice {k}: reduced polynomials do not add up"))?;
        l.stability_classify(&d).map_err(|e| format!("lattice {k}: {e}"))?;
    }
    Ok("(6,4) unstable, (5,2) unstable, (4,0) strictly semistable; additivity on 100 lattices".into())
}

fn smoothness() -> Check {
    let fermat = QuarticSurface::fermat();
    for p in [7u64, 11] {
        let cert = smoothness_probe(&fermat, &[p]).map_err(|e| e.to_string())?;
        ensure(cert.certified_smooth(), || format!("Fermat not smooth mod {p}: {cert:?}"))?;
        let (count, singular) = naive_point_count(fermat.equation(), p);
        ensure(!singular, || format!("oracle finds a singular point mod {p}"))?;
        let PrimeVerdict::SmoothModP { points_on_surface } = cert.verdicts[0].1 else { unreachable!() };
        ensure(points_on_surface == count, || format!("mod {p}: {points_on_surface} points, oracle {count}"))?;
    }
    let double = QuarticSurface::parse("x0^2*x1^2").map_err(|e| e.to_string())?;
    let cert = smoothness_probe(&double, &[7]).map_err(|e| e.to_string())?;
    let w = cert.singular_witnesses();
    ensure(w.len() == 1, || "x0^2*x1^2 not flagged singular".into())?;
    let pt = w[0].1;
    ensure(pt[0] == 0 || pt[1] == 0, || format!("witness {pt:?} not on the surface"))?;
    let mut slowest = Duration::ZERO;
    for s in [fermat, QuarticSurface::parse("x0^4 + x0*x1^3 + x1*x2^3 + x2*x3^3 - 2*x3^4").map_err(|e| e.to_string())?]
    {
        let start = Instant::now();
        smoothness_probe(&s, &[101]).map_err(|e| e.to_string())?;
        slowest = slowest.max(start.elapsed());
    }
    within(slowest, Duration::from_secs(5))?;
    Ok(format!("Fermat smooth mod 7, 11; x0^2x1^2 singular at {pt:?}; p = 101 in {slowest:.2?}"))
}

fn property_checks() -> Check {
    let mut r = rng(11);
    for k in 0..200 {
        let (l, _) = random_lattice_with_c2_eight(&mut r);
        let n = l.rank();
        let a = DivisorClass::new((0..n).map(|_| r.gen_range(-5..=5)).collect());
        let b = DivisorClass::new((0..n).map(|_| r.gen_range(-5..=5)).collect());
        let ab = l.pair(&a, &b).map_err(|e| e.to_string())?;
        ensure(ab == l.pair(&b, &a).map_err(|e| e.to_string())?, || format!("lattice {k}: pairing not symmetric"))?;
        let chi = l.euler_characteristic(1, &a, 0).map_err(|e| e.to_string())?;
        let chi_neg = l.euler_characteristic(1, &-&a, 0).map_err(|e| e.to_string())?;
        ensure(chi == chi_neg, || format!("lattice {k}: chi(D) != chi(-D)"))?;
    }
    for k in 0..200 {
        let len = r.gen_range(1..7);
        let mut hvec: Vec<i64> = (0..len).map(|_| r.gen_range(0..4)).collect();
        hvec[0] = 1;
        if *hvec.last().unwrap() == 0 {
            *hvec.last_mut().unwrap() = 1;
        }
        let p = HilbertProfile::from_hvec(&hvec);
        let deg = hvec.iter().sum::<i64>() as usize;
        ensure(p.is_palindromic() == gorenstein_symmetry(&p, deg), || format!("h-vector {k}: {hvec:?}"))?;
    }
    let bases = [
        schemes::cube_points(),
        schemes::twisted_cubic_points_int(&[0, 1, 2, 3, 4, 5, 6, 7]).map_err(|e| e.to_string())?,
        schemes::random_points(1, 8),
        schemes::random_coplanar_points(1, 8),
    ];
    let verdicts = |e: &schemes::PointScheme| -> Result<_, String> {
        Ok((
            e.hilbert_profile(),
            e.ag_check().verdict,
            e.cayley_bacharach(2).holds(),
            e.classify_degree8().map_err(|e| e.to_string())?.class,
        ))
    };
    let reference = bases.iter().map(verdicts).collect::<Result<Vec<_>, _>>()?;
    for seed in 0..20 {
        let g = schemes::random_coordinate_change(seed);
        for (i, e) in bases.iter().enumerate() {
            let moved = e.transform(&g).map_err(|e| e.to_string())?;
            ensure(verdicts(&moved)? == reference[i], || format!("change {seed} alters scheme {i}"))?;
        }
    }
    Ok("pairing symmetry, chi(D) = chi(-D), palindrome <=> symmetry, 20 coordinate changes".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("pfaffian squares to determinant", pfaffian_squares),
        ("quadric sextuple representation", quadric_representation),
        ("order-8 block identity", block_identity),
        ("Hilbert profiles of degree-8 schemes", hilbert_profiles),
        ("aG classifier", ag_classifier),
        ("Cayley-Bacharach dimensions", cayley_bacharach),
        ("Riemann-Roch family dimensions", riemann_roch),
        ("Watanabe table", watanabe_table),
        ("stability trichotomy", stability),
        ("smoothness probe", smoothness),
        ("property checks", property_checks),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
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
