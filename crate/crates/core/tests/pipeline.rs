use std::collections::BTreeSet;

use itertools::Itertools;

use ordcurves::bipoly::{squarefree_radical, BivariatePolynomial};
use ordcurves::constructions::{sample_configuration, Genericity, SampleKind};
use ordcurves::determined::ordinary_curves;
use ordcurves::linalg::nullspace_of_rows;
use ordcurves::nd::{grow_nd_chain, CandidateOrder};
use ordcurves::point::{points, PlanePoint};
use ordcurves::projection::{build_pipeline, curves_from_basis, exceptional_catalog, project_point};
use ordcurves::scalar::{binom, frac, rat};

fn monomials(e: u32) -> Vec<(u32, u32)> {
    (0..=e).flat_map(|n| (0..=e - n).map(move |m| (n, m))).collect()
}

/// Curves of degree at most `e` meeting `b` in exactly `k` points, found by
/// solving interpolation systems directly.
fn sections_by_interpolation(b: &[PlanePoint], e: u32, k: usize) -> BTreeSet<BivariatePolynomial> {
    let mons = monomials(e);
    let mut out = BTreeSet::new();
    for s in (0..b.len()).combinations(k) {
        let rows: Vec<Vec<_>> = s
            .iter()
            .map(|&i| mons.iter().map(|&(n, m)| BivariatePolynomial::term(rat(1), n, m).evaluate(&b[i])).collect())
            .collect();
        let ns = nullspace_of_rows(mons.len(), &rows);
        if ns.len() != 1 {
            continue;
        }
        let p = BivariatePolynomial::from_terms(mons.iter().copied().zip(ns[0].iter().cloned()));
        if p.is_constant() {
            continue;
        }
        let hit: Vec<usize> = (0..b.len()).filter(|&i| p.vanishes_at(&b[i])).collect();
        if hit == s {
            out.insert(squarefree_radical(&p).unwrap());
        }
    }
    out
}

#[test]
fn catalog_matches_interpolation_at_degree_three() {
    let mut checked = 0;
    for seed in 0..40u64 {
        let kind = SampleKind::Random { count: 11, range: 5, genericity: Genericity::NotOnCurve(3) };
        let a = sample_configuration(kind, 3, seed).unwrap();
        let chain = grow_nd_chain(a.points(), &[], None, 3, &CandidateOrder::Seeded(seed)).unwrap();
        if !chain.verified() {
            continue;
        }
        let b = chain.basis.unwrap().points;
        let catalog = exceptional_catalog(a.points(), &b, 3).unwrap();
        let mine: BTreeSet<_> = catalog.iter().map(|c| c.curve.radical().clone()).collect();
        let mut expected = BTreeSet::new();
        for e in 1..3u32 {
            let k = binom(5, 2) - binom((3 - e) as usize + 2, 2) - 1;
            expected.extend(sections_by_interpolation(&b, e, k));
        }
        assert_eq!(mine, expected, "seed {seed}");
        checked += 1;
        if checked == 5 {
            break;
        }
    }
    assert_eq!(checked, 5);
}

#[test]
fn basis_lies_in_the_center_and_exceptional_curves_collapse() {
    let a = points(&[(0, 0), (1, 0), (0, 1), (2, 3), (5, 1), (-1, 4), (3, -2), (7, 5), (2, 0)]);
    let b = points(&[(0, 0), (1, 0), (0, 1)]);
    let state = build_pipeline(&a, &b, 2).unwrap();
    for p in &b {
        assert!(state.d_a.iter().any(|&i| &a[i] == p));
    }
    let x_axis = state.exceptional.iter().find(|x| x.curve.curve.radical() == &"y".parse().unwrap()).unwrap();
    let on_axis = [PlanePoint::int(2, 0), PlanePoint::int(9, 0), PlanePoint::new(frac(-1, 2), rat(0))];
    for p in &on_axis {
        assert_eq!(project_point(&state.map, p, 2).unwrap(), x_axis.image);
    }
    assert!(state.e_a.contains(&8));
    let out = curves_from_basis(&a, &b, 2).unwrap();
    let ordinary = ordinary_curves(&ordcurves::determined::PointConfiguration::new(a.clone(), 2).unwrap(), out.trace.n)
        .unwrap()
        .radicals();
    assert!(out.curves.curves.iter().all(|c| ordinary.contains(c.curve.radical())));
    assert!(out.trace.emitted >= 1);
    let json = serde_json::to_value(&out.trace).unwrap();
    for key in ["d_a", "e_a", "s", "t", "delta", "n", "emitted"] {
        assert!(json.get(key).is_some(), "{key}");
    }
}

#[test]
fn pipeline_rejects_non_bases() {
    let a = points(&[(0, 0), (1, 0), (2, 0), (0, 1), (3, 5), (1, 4)]);
    assert!(build_pipeline(&a, &points(&[(0, 0), (1, 0), (2, 0)]), 2).is_err());
    let conic = points(&[(0, 0), (1, 1), (2, 4), (3, 9), (-1, 1), (-2, 4)]);
    assert!(build_pipeline(&conic, &points(&[(0, 0), (1, 1), (2, 4)]), 2).is_err());
}
