use super::*;
use crate::minimal_model::{fusion_tensor, verlinde_algebra, Rational};

fn ctx(p: i64, q: i64) -> GroupContext {
    GroupContext::new(ModelParams::new(p, q).unwrap()).unwrap()
}

fn bv(s: &str) -> BitVector {
    BitVector::parse(s).unwrap()
}

fn coset(s: &str) -> Coset {
    Coset::of(bv(s))
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn context_geometry() {
    let c = ctx(3, 4);
    assert_eq!(c.width(), 3);
    assert_eq!(c.coords(Part::A), 1..=1);
    assert_eq!(c.coords(Part::B), 2..=3);
    let c = ctx(2, 3);
    assert_eq!(c.width(), 1);
    assert!(c.coords(Part::A).is_empty());
    assert_eq!(c.coords(Part::B), 1..=1);
    assert!(GroupContext::new(ModelParams::new(31, 33).unwrap()).is_ok());
    assert!(matches!(
        GroupContext::new(ModelParams::new(31, 36).unwrap()),
        Err(Error::Capacity(_))
    ));
}

#[test]
fn classes_of_ising_vectors() {
    let c = ctx(3, 4);
    let l = KacLabel::new;
    assert_eq!(class_of(&c, &bv("000")).unwrap(), l(1, 1));
    // coordinate 1 is the A block; "001" sets coordinate 3
    assert_eq!(class_of(&c, &bv("001")).unwrap(), l(1, 2));
    assert_eq!(class_of(&c, &bv("111")).unwrap(), l(2, 3));
    assert!(class_of(&c, &bv("0000")).is_err());
}

#[test]
fn class_member_lists() {
    let c = ctx(3, 4);
    let l = KacLabel::new;
    let members: Vec<String> = class_members(&c, l(1, 2))
        .unwrap()
        .iter()
        .map(|v| v.to_string())
        .collect();
    // ascending by value: "010" (bit 1) before "001" (bit 2)
    assert_eq!(members, vec!["010", "001"]);
    assert_eq!(class_members(&c, l(1, 1)).unwrap(), vec![bv("000")]);
    assert!(class_members(&c, l(3, 1)).is_err());

    let c = ctx(4, 5);
    let members = class_members(&c, l(2, 2)).unwrap();
    assert_eq!(members.len() as u64, binomial(2, 1) * binomial(3, 1));
    let enumerated = (0..1u64 << 5)
        .filter(|&x| c.class_of_bits(x) == l(2, 2))
        .count();
    assert_eq!(members.len(), enumerated);
}

#[test]
fn classes_partition_h() {
    for p in 2..=9 {
        for q in p + 1..=10 {
            let Ok(params) = ModelParams::new(p, q) else {
                continue;
            };
            let c = GroupContext::new(params).unwrap();
            let mut seen = vec![false; 1 << c.width()];
            for m in 1..p {
                for n in 1..q {
                    let members = class_members(&c, KacLabel::new(m, n)).unwrap();
                    assert_eq!(
                        members.len() as u64,
                        binomial((p - 2) as u64, (m - 1) as u64)
                            * binomial((q - 2) as u64, (n - 1) as u64)
                    );
                    for x in members {
                        assert!(!seen[x.bits() as usize], "classes overlap");
                        seen[x.bits() as usize] = true;
                        assert_eq!(class_of(&c, &x).unwrap(), KacLabel::new(m, n));
                    }
                }
            }
            assert!(seen.iter().all(|&s| s));
        }
    }
}

#[test]
fn orbit_sum_examples() {
    // p = 5: the A block has 3 coordinates
    let c = ctx(5, 6);
    assert_eq!(orbit_sum_classes(&c, Part::A, 2, 2).unwrap(), vec![1, 3]);
    assert_eq!(orbit_sum_classes(&c, Part::A, 1, 1).unwrap(), vec![1]);
    let c = ctx(4, 5);
    assert_eq!(orbit_sum_classes(&c, Part::A, 3, 2).unwrap(), vec![2]);
    assert_eq!(orbit_sum_classes(&c, Part::A, 2, 3).unwrap(), vec![2]);
    assert!(orbit_sum_classes(&c, Part::A, 4, 1).is_err());
    assert!(orbit_sum_classes(&c, Part::B, 5, 1).is_err());
    assert_eq!(orbit_sum_classes(&c, Part::B, 4, 4).unwrap(), vec![1]);
}

#[test]
fn orbit_sums_are_full_unions() {
    for p in 2..=8 {
        let c = ctx(p, p + 1);
        for m1 in 1..p {
            for m2 in 1..=m1 {
                let labels = orbit_sum_classes(&c, Part::A, m1, m2).unwrap();
                assert_eq!(
                    labels,
                    crate::minimal_model::admissible_range(p, m1, m2).unwrap()
                );
                let mut union: Vec<BitVector> = labels
                    .iter()
                    .flat_map(|&m3| orbit(&c, Part::A, m3).unwrap())
                    .collect();
                union.sort();
                assert_eq!(orbit_sumset(&c, Part::A, m1, m2).unwrap(), union);
            }
        }
    }
}

#[test]
fn ising_cosets() {
    let c = ctx(3, 4);
    let reps: Vec<String> = quotient_cosets(&c)
        .unwrap()
        .iter()
        .map(|g| g.members().map(|m| m.to_string()).join(","))
        .collect();
    // coordinate 1 printed first
    assert_eq!(reps, vec!["000,111", "100,011", "010,101", "110,001"]);
    assert_eq!(coset("011"), coset("100"));
    assert_eq!(quotient_cosets(&ctx(4, 5)).unwrap().len(), 16);
    assert_eq!(coset("110").add(&coset("101")).unwrap(), coset("011"));
}

#[test]
fn ising_phi() {
    let c = ctx(3, 4);
    let cm = CoverMap::canonical(&c).unwrap();
    let h = |s: &str| phi(&cm, &coset(s)).unwrap().h;
    assert_eq!(h("000"), Rational::from_integer(0));
    assert_eq!(h("100"), Rational::new(1, 2));
    assert_eq!(h("001"), Rational::new(1, 16));
    assert_eq!(h("010"), Rational::new(1, 16));
    let mut image: Vec<Rational> = quotient_cosets(&c)
        .unwrap()
        .iter()
        .map(|g| phi(&cm, g).unwrap().h)
        .collect();
    image.sort();
    assert_eq!(
        image,
        vec![
            Rational::from_integer(0),
            Rational::new(1, 16),
            Rational::new(1, 16),
            Rational::new(1, 2)
        ]
    );
    assert!(cm.respects_classes());
    // the non-canonical member is rejected
    assert!(phi(
        &cm,
        &Coset {
            representative: bv("111")
        }
    )
    .is_err());
}

#[test]
fn canonical_maps_are_covers() {
    for (p, q) in [(2, 3), (3, 4), (4, 5), (3, 5), (5, 6)] {
        let params = ModelParams::new(p, q).unwrap();
        let cm = CoverMap::canonical(&GroupContext::new(params).unwrap()).unwrap();
        let cert = verify_cover(&cm, &fusion_tensor(&params)).unwrap();
        assert_eq!(cert.verdict, Verdict::Pass, "({p},{q}): {:?}", cert.witness);
        assert_eq!(cert.stats.sectors_hit, params.sector_count() as u64);
    }
}

#[test]
fn swapped_ising_map_fails_at_zero() {
    let c = ctx(3, 4);
    let tensor = fusion_tensor(c.params());
    let mut assignment = CoverMap::canonical(&c).unwrap().assignment();
    assignment.swap(0, 1);
    let cm = CoverMap::from_assignment(&c, assignment).unwrap();
    assert!(!cm.respects_classes());
    let cert = verify_cover(&cm, &tensor).unwrap();
    assert_eq!(cert.verdict, Verdict::Fail);
    let l = KacLabel::new;
    // 0 + 0 = 0 now reads [1/2] x [1/2] -> [1/2]
    assert_eq!(
        cert.witness,
        Some(Witness::NonAdmissibleSum {
            left: vec![0, 0],
            right: vec![0, 0],
            sum: vec![0, 0],
            sectors: [l(1, 3), l(1, 3), l(1, 3)],
        })
    );
}

#[test]
fn unrealized_triple_witness() {
    // Everything on the vacuum: condition (1) holds, (2) fails.
    let c = ctx(3, 4);
    let cm = CoverMap::from_assignment(&c, vec![0; 4]).unwrap();
    let cert = verify_cover(&cm, &fusion_tensor(c.params())).unwrap();
    let l = KacLabel::new;
    assert_eq!(
        cert.witness,
        Some(Witness::UnrealizedTriple {
            sectors: [l(1, 1), l(1, 2), l(1, 2)]
        })
    );
}

#[test]
fn threads_do_not_change_certificates() {
    let c = ctx(5, 7);
    let tensor = fusion_tensor(c.params());
    let canonical = CoverMap::canonical(&c).unwrap();
    let mut bad = canonical.assignment();
    bad.swap(5, 17);
    let bad = CoverMap::from_assignment(&c, bad).unwrap();
    for cm in [&canonical, &bad] {
        let single = verify_cover(cm, &tensor).unwrap();
        for threads in [2, 3, 8, 1000] {
            assert_eq!(
                verify_cover_with(cm, &tensor, &VerifyOptions { threads }).unwrap(),
                single
            );
        }
    }
}

#[test]
fn model_mismatch() {
    let cm = CoverMap::canonical(&ctx(3, 4)).unwrap();
    let other = fusion_tensor(&ModelParams::new(4, 5).unwrap());
    assert!(matches!(
        verify_cover(&cm, &other),
        Err(Error::ModelMismatch(3, 4, 4, 5))
    ));
}

#[test]
fn assignment_validation() {
    let c = ctx(3, 4);
    assert!(CoverMap::from_assignment(&c, vec![0; 3]).is_err());
    assert!(CoverMap::from_assignment(&c, vec![0, 1, 2, 3]).is_err());
}

#[test]
fn ising_partition_algebra() {
    let c = ctx(3, 4);
    let cm = CoverMap::canonical(&c).unwrap();
    let w = partition_algebra(&cm).unwrap();
    assert_eq!(w.part_sizes(), &[1, 2, 1]);
    assert_eq!(w.product_support(1, 1), vec![0, 2]);
    for j in 0..3 {
        assert_eq!(w.product_support(0, j), vec![j]);
    }
    let v = verlinde_algebra(fusion_tensor(c.params()));
    assert!(is_isomorphic_to_verlinde(&w, &v).unwrap());

    // move 011 (the coset {100,011}) into the vacuum part
    let mut assignment = cm.assignment();
    assignment[Coset::of(bv("011")).index() as usize] = 0;
    let corrupted = CoverMap::from_assignment(&c, assignment).unwrap();
    assert!(matches!(
        partition_algebra(&corrupted),
        Err(Error::Structural(_))
    ));
    let w = partition_algebra_unchecked(&corrupted);
    assert!(!is_isomorphic_to_verlinde(&w, &v).unwrap());

    let other = verlinde_algebra(fusion_tensor(&ModelParams::new(4, 5).unwrap()));
    assert!(is_isomorphic_to_verlinde(&partition_algebra(&cm).unwrap(), &other).is_err());
}

#[test]
fn tricritical_partition_algebra_matches_fusion() {
    let c = ctx(4, 5);
    let cm = CoverMap::canonical(&c).unwrap();
    let w = partition_algebra(&cm).unwrap();
    let tensor = fusion_tensor(c.params());
    assert_eq!(w.structure_constants(), tensor.coefficients());
    // |P| for [0], [1/10], [3/5], [3/2], [7/16], [3/80]
    assert_eq!(w.part_sizes(), &[1, 3, 3, 1, 2, 6]);
}

#[test]
fn class_sums_follow_admissibility() {
    // H_{m1,n1} + H_{m2,n2} is exactly the union of the admissible H_{m3,n3}.
    for (p, q) in [(3, 4), (4, 5), (3, 7), (5, 6)] {
        let c = ctx(p, q);
        let params = *c.params();
        let labels: Vec<KacLabel> = (1..p)
            .flat_map(|m| (1..q).map(move |n| KacLabel::new(m, n)))
            .collect();
        for &l1 in &labels {
            for &l2 in &labels {
                let mut sums = BTreeSet::new();
                for x in class_members(&c, l1).unwrap() {
                    for y in class_members(&c, l2).unwrap() {
                        sums.insert(x.bits() ^ y.bits());
                    }
                }
                let expected: BTreeSet<u64> = labels
                    .iter()
                    .filter(|&&l3| crate::minimal_model::is_pq_admissible(&params, l1, l2, l3))
                    .flat_map(|&l3| class_members(&c, l3).unwrap())
                    .map(|v| v.bits())
                    .collect();
                assert_eq!(sums, expected, "({p},{q}) {l1} + {l2}");
            }
        }
    }
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    fn vector_pair() -> impl Strategy<Value = (BitVector, BitVector)> {
        (0u32..=30).prop_flat_map(|w| {
            let m = mask(w);
            (any::<u64>(), any::<u64>()).prop_map(move |(a, b)| {
                (
                    BitVector::new(a & m, w).unwrap(),
                    BitVector::new(b & m, w).unwrap(),
                )
            })
        })
    }

    proptest! {
        #[test]
        fn weight_identity((x, y) in vector_pair()) {
            let (direct, formula) = sym_diff_weight_identity(&x, &y).unwrap();
            prop_assert_eq!(direct, formula);
            // support of the sum is the symmetric difference of supports
            let sx: BTreeSet<u32> = x.support().into_iter().collect();
            let sy: BTreeSet<u32> = y.support().into_iter().collect();
            let sum: BTreeSet<u32> = x.add(&y).unwrap().support().into_iter().collect();
            prop_assert_eq!(sum, sx.symmetric_difference(&sy).copied().collect::<BTreeSet<_>>());
        }

        #[test]
        fn coset_class_labels_are_conjugate(p in 2i64..12, q in 2i64..12, seed in any::<u64>()) {
            prop_assume!(p < q);
            let Ok(params) = ModelParams::new(p, q) else { return Ok(()) };
            let c = GroupContext::new(params).unwrap();
            let x = BitVector::new(seed & mask(c.width()), c.width()).unwrap();
            let partner = x.add(&c.all_ones()).unwrap();
            prop_assert_eq!(class_of(&c, &partner).unwrap(), params.conjugate(class_of(&c, &x).unwrap()));
            prop_assert_eq!(Coset::of(x), Coset::of(partner));
        }
    }
}
