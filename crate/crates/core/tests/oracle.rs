//! Brute-force checkers written from the atom rules directly, compared with
//! the bitset implementations.

use std::collections::BTreeSet;

use lqn_core::algebra::{Atom, AtomStructure};
use lqn_core::coloring::{find_failures, randomize_t_colors, Condition};
use lqn_core::geometry::{build_doubled, build_lyndon, LabelMatrix};
use lqn_core::verify::{verify_conditions_only, verify_full, Report};
use proptest::prelude::*;

fn in_product(q: u32, x: Atom, y: Atom, z: Atom) -> bool {
    use Atom::*;
    match (x, y) {
        (Identity, w) | (w, Identity) => z == w,
        (A(i), A(j)) if i == j => z == Identity || z == A(i),
        (A(i), A(j)) => matches!(z, A(k) if k != i && k != j && k <= q),
        (A(_), T(_)) | (T(_), A(_)) => matches!(z, T(_)),
        (T(k), T(l)) if k == l => matches!(z, Identity | A(_)),
        (T(_), T(_)) => matches!(z, A(_)),
    }
}

fn all_atoms(q: u32, n: u32) -> Vec<Atom> {
    let mut v = vec![Atom::Identity];
    v.extend((0..=q).map(Atom::A));
    v.extend((1..=n).map(Atom::T));
    v
}

/// Triangle consistency plus a witness for every `(d, e)` with
/// `label(x,y) <= d;e`, over all ordered triples.
fn naive_is_representation(m: &LabelMatrix) -> bool {
    let (q, n, v) = (m.q(), m.n(), m.vertex_count());
    let atoms = all_atoms(q, n);
    for x in 0..v {
        for y in 0..v {
            for z in 0..v {
                if !in_product(q, m.atom(x, y), m.atom(y, z), m.atom(x, z)) {
                    return false;
                }
            }
        }
    }
    for x in 0..v {
        for y in 0..v {
            let c = m.atom(x, y);
            for &d in &atoms {
                for &e in &atoms {
                    if in_product(q, d, e, c)
                        && !(0..v).any(|z| m.atom(x, z) == d && m.atom(z, y) == e)
                    {
                        return false;
                    }
                }
            }
        }
    }
    true
}

type Need = (usize, usize, Condition, Atom, Atom);

fn naive_failures(m: &LabelMatrix) -> BTreeSet<Need> {
    let (q, n, v) = (m.q(), m.n(), m.vertex_count());
    let plane = v / 2;
    let mut out = BTreeSet::new();
    let has = |x: usize, y: usize, d: Atom, e: Atom| {
        (0..v).any(|z| m.atom(x, z) == d && m.atom(z, y) == e)
    };
    for x in 0..v {
        for y in x + 1..v {
            let cross = (x < plane) != (y < plane);
            for i in 1..=n {
                if cross {
                    for k in 0..=q {
                        let (a, t) = (Atom::A(k), Atom::T(i));
                        if !has(x, y, a, t) {
                            out.insert((x, y, Condition::Tatta, a, t));
                        }
                        if !has(x, y, t, a) {
                            out.insert((x, y, Condition::Tatta, t, a));
                        }
                    }
                } else {
                    for j in 1..=n {
                        let (d, e) = (Atom::T(i), Atom::T(j));
                        if !has(x, y, d, e) {
                            out.insert((x, y, Condition::Att, d, e));
                        }
                    }
                }
            }
        }
    }
    out
}

#[test]
fn naive_agrees_on_geometric_matrices() {
    for q in [2u64, 3, 4, 5, 7] {
        let m = build_lyndon(q).unwrap();
        let s = AtomStructure::new(m.q(), m.n()).unwrap();
        assert_eq!(
            naive_is_representation(&m),
            verify_full(&m, &s, Report::First).unwrap().valid,
            "q={q}"
        );
    }
    for q in [2u64, 3, 4] {
        let m = build_doubled(q).unwrap();
        let s = AtomStructure::new(m.q(), m.n()).unwrap();
        assert_eq!(
            naive_is_representation(&m),
            verify_full(&m, &s, Report::First).unwrap().valid,
            "q={q}"
        );
    }
}

#[test]
fn naive_agrees_on_random_colorings() {
    for (q, n) in [(3u64, 1u32), (3, 2), (4, 2), (5, 2)] {
        let s = AtomStructure::new(q as u32, n).unwrap();
        for seed in 0..4 {
            let m = randomize_t_colors(&build_doubled(q).unwrap(), n, seed).unwrap();
            let naive = naive_is_representation(&m);
            assert_eq!(naive, verify_full(&m, &s, Report::First).unwrap().valid);
            assert_eq!(naive, verify_conditions_only(&m, &s).unwrap());
        }
    }
}

#[test]
fn naive_agrees_on_single_edits() {
    let base = build_lyndon(4).unwrap();
    let s = AtomStructure::new(4, 0).unwrap();
    for (x, y, l) in [(0, 1, 1), (0, 5, 3), (3, 9, 5), (2, 15, 2)] {
        let mut m = base.clone();
        m.set(x, y, l);
        assert_eq!(
            naive_is_representation(&m),
            verify_full(&m, &s, Report::First).unwrap().valid
        );
    }
}

#[test]
fn failures_match_naive() {
    for (q, n, seed) in [
        (3u64, 2u32, 0u64),
        (3, 2, 1),
        (4, 2, 0),
        (5, 3, 7),
        (2, 2, 3),
    ] {
        let m = randomize_t_colors(&build_doubled(q).unwrap(), n, seed).unwrap();
        let s = AtomStructure::new(q as u32, n).unwrap();
        let fast = find_failures(&m, &s).unwrap();
        let keys: Vec<(usize, usize)> = fast.iter().map(|f| (f.u, f.v)).collect();
        assert!(keys.windows(2).all(|w| w[0] <= w[1]), "not in edge order");
        let fast: BTreeSet<Need> = fast
            .into_iter()
            .map(|f| (f.u, f.v, f.condition, f.need.0, f.need.1))
            .collect();
        assert_eq!(fast, naive_failures(&m), "q={q} n={n} seed={seed}");
    }
}

fn random_doubled(q: u64, n: u32) -> impl Strategy<Value = (LabelMatrix, Vec<usize>)> {
    let v = 2 * (q * q) as usize;
    (
        any::<u64>(),
        Just((0..v).collect::<Vec<usize>>()).prop_shuffle(),
    )
        .prop_map(move |(seed, perm)| {
            (
                randomize_t_colors(&build_doubled(q).unwrap(), n, seed).unwrap(),
                perm,
            )
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn verdict_is_permutation_invariant((m, perm) in random_doubled(3, 2)) {
        let s = AtomStructure::new(3, 2).unwrap();
        let p = m.permuted(&perm);
        let before = verify_full(&m, &s, Report::All).unwrap();
        let after = verify_full(&p, &s, Report::All).unwrap();
        prop_assert_eq!(before.valid, after.valid);
        prop_assert_eq!(before.violations.len(), after.violations.len());
        prop_assert_eq!(after.valid, naive_is_representation(&p));
    }

    #[test]
    fn valid_geometry_survives_relabeling(perm in Just((0..25).collect::<Vec<usize>>()).prop_shuffle()) {
        let m = build_lyndon(5).unwrap().permuted(&perm);
        let s = AtomStructure::new(5, 0).unwrap();
        prop_assert!(verify_full(&m, &s, Report::First).unwrap().valid);
    }
}
