//! Acceptance suite: one test per criterion, each printing a pass line.
//! Every equality is exact; there are no tolerances anywhere.

use std::sync::Arc;

use num::{BigInt, BigRational, One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use clique_operads::bases::{from_h, from_k, h_compose, k_compose, to_h, to_k};
use clique_operads::enumeration::{
    dimension_table, enumerate_count, generating_span, in_generating_set, reconstruction_checks,
    space_size, EnumGuard,
};
use clique_operads::families::{q_compose, verify_ideal, OperadFamily, project};
use clique_operads::noncrossing::{
    count_dual_configurations, functional_equation_residual, nc_dim, nc_dual_hilbert, nc_hilbert,
    tree_compose, verify_bijection, DualNode, DualTree,
};
use clique_operads::operad::{
    all_cliques, check_basic, check_cyclic, cliques_up_to, lin_compose, map_clique,
    verify_operad_axioms, AxiomMode, BasisTag, LinComb,
};
use clique_operads::presentation::{
    build_r, build_r_perp, count_normal_forms, duality_pairing, verify_koszul_duality,
    verify_presentation,
};
use clique_operads::{Clique, Element, MagmaMorphism, UnitaryMagma};

const SEED: u64 = 42;

fn d0() -> Arc<UnitaryMagma> {
    UnitaryMagma::d_magma(0)
}

fn d1() -> Arc<UnitaryMagma> {
    UnitaryMagma::d_magma(1)
}

fn trivial() -> Arc<UnitaryMagma> {
    UnitaryMagma::cyclic(1).unwrap()
}

fn z() -> Arc<UnitaryMagma> {
    UnitaryMagma::integers()
}

fn pass(criterion: &str, detail: &str) {
    println!("[PASS] {criterion}: {detail}");
}

#[test]
fn criterion_01_operad_axioms() {
    let exhaustive = verify_operad_axioms(&d0(), 3, AxiomMode::Exhaustive);
    assert!(
        exhaustive.verdict(),
        "exhaustive axiom failure: {:?}",
        exhaustive.failures.first()
    );
    let sampled = verify_operad_axioms(
        &z(),
        4,
        AxiomMode::Sampled {
            samples: 1000,
            seed: SEED,
            window: 3,
        },
    );
    assert!(
        sampled.verdict(),
        "sampled axiom failure: {:?}",
        sampled.failures.first()
    );
    pass(
        "criterion 01",
        &format!(
            "operad axioms: exhaustive over D0 ({} cases), sampled over Z ({} cases)",
            exhaustive.checked, sampled.checked
        ),
    );
}

#[test]
fn criterion_02_dimension_formulas() {
    let guard = EnumGuard::default();
    let magmas = [(1u64, trivial()), (2, d0()), (3, d1())];
    let mut checked = 0;
    for (m, magma) in &magmas {
        for n in 2..=3u32 {
            let count = enumerate_count(magma, n, None, &guard).unwrap();
            assert_eq!(count, space_size(*m, n).unwrap(), "full count m={m} n={n}");
            let bub = OperadFamily::parse("Bub", magma).unwrap();
            assert_eq!(
                enumerate_count(magma, n, Some(&bub), &guard).unwrap(),
                m.pow(n + 1),
                "bubble count m={m} n={n}"
            );
            let whi = OperadFamily::parse("Whi", magma).unwrap();
            assert_eq!(
                enumerate_count(magma, n, Some(&whi), &guard).unwrap(),
                m.pow((n + 1) * (n - 2) / 2),
                "white count m={m} n={n}"
            );
            checked += 3;
        }
    }
    // And the (m, n) = (2, 4) row.
    let count = enumerate_count(&d0(), 4, None, &guard).unwrap();
    assert_eq!(count, space_size(2, 4).unwrap());
    let bub = OperadFamily::parse("Bub", &d0()).unwrap();
    assert_eq!(enumerate_count(&d0(), 4, Some(&bub), &guard).unwrap(), 32);
    let whi = OperadFamily::parse("Whi", &d0()).unwrap();
    assert_eq!(enumerate_count(&d0(), 4, Some(&whi), &guard).unwrap(), 32);
    checked += 3;
    pass(
        "criterion 02",
        &format!("dimension formulas for full, bubble, and white spaces ({checked} counts)"),
    );
}

#[test]
fn criterion_03_quotient_sequences() {
    // The D1 row at arity 5 has 3^15 cliques, above the default guard.
    let guard = EnumGuard::with_limit(20_000_000);
    let expectations: [(&str, Arc<UnitaryMagma>, [u64; 5]); 12] = [
        ("Acy", d0(), [1, 7, 38, 291, 2932]),
        ("Nes", d0(), [1, 5, 14, 42, 132]),
        ("Inv", d0(), [1, 4, 10, 26, 76]),
        ("Inv", d1(), [1, 7, 25, 81, 331]),
        ("Deg:2", d0(), [1, 8, 41, 253, 1858]),
        ("Sch", d0(), [1, 1, 3, 11, 45]),
        ("Pat", d0(), [1, 7, 34, 206, 1486]),
        ("For", d0(), [1, 7, 33, 181, 1083]),
        ("Mot", d0(), [1, 4, 9, 21, 51]),
        ("Dis", d0(), [1, 1, 3, 6, 13]),
        ("Luc", d0(), [1, 4, 7, 11, 18]),
        ("NC", d0(), [1, 8, 48, 352, 2880]),
    ];
    for (name, magma, expected) in &expectations {
        let family = OperadFamily::parse(name, magma).unwrap();
        let table = dimension_table(&family, 5, &guard).unwrap();
        let computed: Vec<u64> = table.rows.iter().map(|r| r.computed).collect();
        assert_eq!(&computed[..], &expected[..], "{name} over {}", magma.name());
        assert!(table.verdict(), "registry mismatch for {name}");
    }
    pass(
        "criterion 03",
        "all twelve quotient dimension sequences match through arity 5",
    );
}

#[test]
fn criterion_04_ideal_property() {
    for name in ["NC", "Bub", "Acy", "Nes", "Deg:1", "Deg:2"] {
        let family = OperadFamily::parse(name, &d0()).unwrap();
        let report = verify_ideal(&family, 3).unwrap();
        assert!(
            report.verdict(),
            "ideal failure for {name}: {:?}",
            report.failures.first()
        );
        // Compose-then-project equals q_compose on projected inputs, over
        // every pair of basis cliques of arities two and three.
        let all = cliques_up_to(&d0(), 3);
        for p in &all {
            for q in &all {
                for i in 1..=p.arity() {
                    let fp = LinComb::single(p.clone(), BasisTag::Fundamental);
                    let fq = LinComb::single(q.clone(), BasisTag::Fundamental);
                    let lhs = project(&lin_compose(&fp, i, &fq).unwrap(), &family).unwrap();
                    let rhs = q_compose(
                        &project(&fp, &family).unwrap(),
                        i,
                        &project(&fq, &family).unwrap(),
                        &family,
                    )
                    .unwrap();
                    assert_eq!(lhs, rhs, "{name} at {p} o_{i} {q}");
                }
            }
        }
    }
    pass(
        "criterion 04",
        "ideal property and projection compatibility for six families over D0",
    );
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let mut num = 0i64;
    while num == 0 {
        num = rng.gen_range(-9..=9);
    }
    let den = rng.gen_range(1..=4i64);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn random_clique(magma: &Arc<UnitaryMagma>, arity: u32, rng: &mut ChaCha8Rng) -> Clique {
    let labels: Vec<((u32, u32), Element)> = clique_operads::operad::all_arcs(arity)
        .into_iter()
        .map(|arc| {
            let label = if magma.is_finite() {
                let m = magma.cardinality().unwrap() as u32;
                Element::Table(rng.gen_range(0..m))
            } else {
                Element::Int(rng.gen_range(-3..=3i64).into())
            };
            (arc, label)
        })
        .collect();
    Clique::new(magma, arity, labels).unwrap()
}

fn random_lincomb(magma: &Arc<UnitaryMagma>, rng: &mut ChaCha8Rng) -> LinComb {
    let arity = rng.gen_range(2..=if magma.is_finite() { 4 } else { 3 });
    let mut out = LinComb::zero(magma, arity, BasisTag::Fundamental);
    for _ in 0..rng.gen_range(1..=3) {
        out.add_term(random_clique(magma, arity, rng), random_rational(rng))
            .unwrap();
    }
    out
}

#[test]
fn criterion_05_hk_bases() {
    // Round trips on 500 seeded random combinations over D0 and Z.
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for magma in [d0(), z()] {
        for _ in 0..250 {
            let f = random_lincomb(&magma, &mut rng);
            assert_eq!(from_h(&to_h(&f).unwrap()).unwrap(), f);
            assert_eq!(to_h(&from_h(&f.clone().into_h()).unwrap()).unwrap(), f.clone().into_h());
            assert_eq!(from_k(&to_k(&f).unwrap()).unwrap(), f);
            assert_eq!(to_k(&from_k(&f.clone().into_k()).unwrap()).unwrap(), f.clone().into_k());
        }
    }
    // Closed composition formulas agree with fundamental composition on
    // every pair of D0 triangles at both positions.
    let triangles = all_cliques(&d0(), 2);
    for p in &triangles {
        for q in &triangles {
            for i in 1..=2u32 {
                let h_direct = from_h(&h_compose(p, i, q).unwrap()).unwrap();
                let h_expanded = lin_compose(
                    &from_h(&LinComb::single(p.clone(), BasisTag::H)).unwrap(),
                    i,
                    &from_h(&LinComb::single(q.clone(), BasisTag::H)).unwrap(),
                )
                .unwrap();
                assert_eq!(h_direct, h_expanded);
                let k_direct = from_k(&k_compose(p, i, q).unwrap()).unwrap();
                let k_expanded = lin_compose(
                    &from_k(&LinComb::single(p.clone(), BasisTag::K)).unwrap(),
                    i,
                    &from_k(&LinComb::single(q.clone(), BasisTag::K)).unwrap(),
                )
                .unwrap();
                assert_eq!(k_direct, k_expanded);
            }
        }
    }
    // The two displayed integer examples, term for term.
    let p = Clique::parse(&z(), 2, &[(2, 3, "1")]).unwrap();
    let q = Clique::parse(&z(), 2, &[(1, 3, "1")]).unwrap();
    let h = h_compose(&p, 2, &q).unwrap();
    assert_eq!(h.len(), 3);
    assert_eq!(
        h.coefficient(&Clique::parse(&z(), 3, &[]).unwrap()),
        BigRational::one()
    );
    assert_eq!(
        h.coefficient(&Clique::parse(&z(), 3, &[(2, 4, "1")]).unwrap()),
        BigRational::from_integer(2.into())
    );
    assert_eq!(
        h.coefficient(&Clique::parse(&z(), 3, &[(2, 4, "2")]).unwrap()),
        BigRational::one()
    );
    let k = k_compose(&p, 2, &q).unwrap();
    assert_eq!(k.len(), 2);
    assert_eq!(
        k.coefficient(&Clique::parse(&z(), 3, &[]).unwrap()),
        BigRational::one()
    );
    assert_eq!(
        k.coefficient(&Clique::parse(&z(), 3, &[(2, 4, "2")]).unwrap()),
        BigRational::one()
    );
    pass(
        "criterion 05",
        "H/K round trips (500 seeded combinations), formula agreement on 128 pairs, both displayed examples",
    );
}

trait IntoBasis {
    fn into_h(self) -> LinComb;
    fn into_k(self) -> LinComb;
}

impl IntoBasis for LinComb {
    fn into_h(self) -> LinComb {
        LinComb::from_terms(
            &self.magma().clone(),
            self.arity(),
            BasisTag::H,
            self.terms().map(|(c, k)| (c.clone(), k.clone())),
        )
        .unwrap()
    }

    fn into_k(self) -> LinComb {
        LinComb::from_terms(
            &self.magma().clone(),
            self.arity(),
            BasisTag::K,
            self.terms().map(|(c, k)| (c.clone(), k.clone())),
        )
        .unwrap()
    }
}

#[test]
fn criterion_06_dual_trees() {
    // Round trips for every noncrossing configuration of arity up to 4
    // over D0 (408 configurations past the unit), and naturality with
    // composition for operand arities up to 3.
    let report = verify_bijection(&d0(), 3).unwrap();
    assert!(report.verdict(), "{:?}", report.failures.first());
    let mut round_trips = 0;
    for n in 2..=4 {
        round_trips += all_cliques(&d0(), n)
            .iter()
            .filter(|p| p.stats().crossing == 0)
            .count();
    }
    assert_eq!(round_trips, 408);

    // The two displayed tree compositions over the cyclic magma of
    // order 3: a graft with a solid connecting edge, and a contraction.
    let m = UnitaryMagma::cyclic(3).unwrap();
    let leaf = |l: &str| DualNode::leaf(m.parse_element(l).unwrap());
    let node = |l: &str, children: Vec<DualNode>| DualNode {
        label: m.parse_element(l).unwrap(),
        children,
    };
    let s = DualTree::new(
        &m,
        node(
            "2",
            vec![
                node("1", vec![leaf("0"), leaf("1")]),
                node("1", vec![leaf("2"), leaf("0")]),
                leaf("0"),
            ],
        ),
    )
    .unwrap();
    let t = DualTree::new(
        &m,
        node("1", vec![leaf("0"), node("1", vec![leaf("0"), leaf("2")])]),
    )
    .unwrap();
    let grafted = tree_compose(&s, 2, &t).unwrap();
    let expected_graft = DualTree::new(
        &m,
        node(
            "2",
            vec![
                node(
                    "1",
                    vec![
                        leaf("0"),
                        node("2", vec![leaf("0"), node("1", vec![leaf("0"), leaf("2")])]),
                    ],
                ),
                node("1", vec![leaf("2"), leaf("0")]),
                leaf("0"),
            ],
        ),
    )
    .unwrap();
    assert_eq!(grafted, expected_graft);
    let contracted = tree_compose(&s, 3, &t).unwrap();
    let expected_contraction = DualTree::new(
        &m,
        node(
            "2",
            vec![
                node("1", vec![leaf("0"), leaf("1")]),
                node(
                    "1",
                    vec![
                        leaf("0"),
                        node("1", vec![leaf("0"), leaf("2")]),
                        leaf("0"),
                    ],
                ),
                leaf("0"),
            ],
        ),
    )
    .unwrap();
    assert_eq!(contracted, expected_contraction);
    pass(
        "criterion 06",
        "dual-tree bijection (408 round trips), naturality, both displayed compositions",
    );
}

#[test]
fn criterion_07_hilbert_series() {
    let h = nc_hilbert(2, 5);
    assert_eq!(
        h.integer_coefficients(),
        [1u64, 8, 48, 352, 2880].map(BigInt::from).to_vec()
    );
    let d = nc_dual_hilbert(2, 5);
    assert_eq!(
        d.integer_coefficients(),
        [1u64, 8, 80, 992, 13760].map(BigInt::from).to_vec()
    );
    for m in 1..=4u64 {
        for dual in [false, true] {
            let s = if dual {
                nc_dual_hilbert(m, 10)
            } else {
                nc_hilbert(m, 10)
            };
            assert!(
                functional_equation_residual(m, &s, dual)
                    .iter()
                    .all(|r| r.is_zero()),
                "residual m={m} dual={dual}"
            );
        }
        let h = nc_hilbert(m, 8);
        for n in 1..=8u32 {
            assert_eq!(
                BigRational::from_integer(nc_dim(m, n)),
                h.coefficient(n),
                "closed form m={m} n={n}"
            );
        }
    }
    for m in 1..=3u64 {
        let d = nc_dual_hilbert(m, 6);
        for n in 2..=6u32 {
            assert_eq!(
                BigRational::from_integer(count_dual_configurations(m, n)),
                d.coefficient(n),
                "dual description m={m} n={n}"
            );
        }
    }
    pass(
        "criterion 07",
        "Hilbert series, residuals to order 10, closed form to arity 8, dual description to arity 6",
    );
}

#[test]
fn criterion_08_presentation_koszul() {
    let r = build_r(&d0()).unwrap();
    let r_perp = build_r_perp(&d0()).unwrap();
    assert_eq!(r.rank(), 80);
    assert_eq!(r_perp.rank(), 48);
    assert_eq!(r.rank() + r_perp.rank(), 128);
    assert_eq!(r.ambient_dim(), 128);
    for a in r.vectors() {
        for b in r_perp.vectors() {
            assert!(duality_pairing(2, a, b).is_zero());
        }
    }
    let koszul = verify_koszul_duality(&d0()).unwrap();
    assert!(koszul.verdict(), "{:?}", koszul.failures.first());
    let presentation = verify_presentation(&d0(), 5).unwrap();
    assert!(presentation.verdict(), "{:?}", presentation.failures.first());
    for (n, expected) in [(2u32, 8u64), (3, 48), (4, 352), (5, 2880)] {
        assert_eq!(count_normal_forms(&d0(), n).unwrap(), BigInt::from(expected));
    }
    let r1 = build_r(&trivial()).unwrap();
    let r1_perp = build_r_perp(&trivial()).unwrap();
    assert_eq!((r1.rank(), r1_perp.rank()), (1, 1));
    pass(
        "criterion 08",
        "ranks 80/48 summing to 128, orthogonality, kernel, normal forms 8/48/352/2880, trivial ranks 1/1",
    );
}

#[test]
fn criterion_09_generating_set() {
    let result = generating_span(&d0(), 3, &EnumGuard::default()).unwrap();
    assert_eq!(
        (result.span_dim, result.generator_count, result.verdict),
        (48, 16, true)
    );
    let arity2 = all_cliques(&d0(), 2);
    assert_eq!(arity2.len(), 8);
    assert!(arity2.iter().all(in_generating_set));
    pass(
        "criterion 09",
        "span (48, 16, true) at arity 3; all 8 triangles generate at arity 2; minimality holds",
    );
}

#[test]
fn criterion_10_basic_cyclic_functor() {
    // Basic criterion agrees with right cancellability for four magmas.
    for (name, magma) in [
        ("N2", UnitaryMagma::cyclic(2).unwrap()),
        ("N3", UnitaryMagma::cyclic(3).unwrap()),
        ("D0", d0()),
        ("D1", d1()),
    ] {
        let report = check_basic(&magma, 2);
        assert!(report.verdict(), "basic disagreement for {name}");
    }
    // Full rotations are the identity up to arity 4 over D0.
    for n in 1..=4u32 {
        for p in all_cliques(&d0(), n) {
            let mut r = p.clone();
            for _ in 0..=n {
                r = r.rotate();
            }
            assert_eq!(r, p);
        }
    }
    // Exactly one compatibility law holds and is named.
    let cyclic = check_cyclic(&d0(), 3);
    assert!(cyclic.verdict());
    assert!(cyclic.notes.iter().any(|n| n.contains("cyclic law")));
    // Functoriality of the mod-2 reduction, exhaustive on operand
    // arities up to 3.
    let n4 = UnitaryMagma::cyclic(4).unwrap();
    let n2 = UnitaryMagma::cyclic(2).unwrap();
    let phi = MagmaMorphism::from_fn(&n4, &n2, |e| match e {
        Element::Table(i) => Element::Table(i % 2),
        _ => unreachable!(),
    })
    .unwrap();
    assert!(phi.is_valid());
    let cliques = cliques_up_to(&n4, 3);
    let images: Vec<Clique> = cliques.iter().map(|p| map_clique(&phi, p).unwrap()).collect();
    let checked: u64 = cliques
        .par_iter()
        .zip(images.par_iter())
        .map(|(p, p_img)| {
            let mut count = 0u64;
            for i in 1..=p.arity() {
                for (q, q_img) in cliques.iter().zip(images.iter()) {
                    let direct = map_clique(&phi, &p.compose(i, q).unwrap()).unwrap();
                    let through = p_img.compose(i, q_img).unwrap();
                    assert_eq!(direct, through);
                    count += 1;
                }
            }
            count
        })
        .sum();
    pass(
        "criterion 10",
        &format!(
            "basic agreement for four magmas, full rotations to arity 4, cyclic law named, functoriality on {checked} compositions"
        ),
    );
}

#[test]
fn criterion_11_reconstructions() {
    let report = reconstruction_checks();
    assert!(report.verdict(), "{:?}", report.failures.first());
    // Spot-check the quoted values directly.
    let bnc = UnitaryMagma::bnc();
    let counts: Vec<usize> = (2..=4)
        .map(|n| {
            all_cliques(&bnc, n)
                .iter()
                .filter(|p| {
                    let arity = p.arity();
                    p.stats().crossing == 0
                        && (1..=arity).all(|i| p.is_solid(i, i + 1))
                        && p.is_solid(1, arity + 1)
                })
                .count()
        })
        .collect();
    assert_eq!(counts, vec![8, 80, 992]);
    let mt = UnitaryMagma::mt();
    let guard = EnumGuard::default();
    assert_eq!(enumerate_count(&mt, 2, None, &guard).unwrap(), 8);
    assert_eq!(enumerate_count(&mt, 3, None, &guard).unwrap(), 64);
    pass(
        "criterion 11",
        "boundary-solid counts 8/80/992 with closure; multi-tilde dimensions 8 and 64",
    );
}

// Criterion 12 (byte-identical CLI output across worker counts) lives in
// the CLI crate's acceptance tests, next to the binary it drives.
