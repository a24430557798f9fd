use std::sync::OnceLock;

use hosoya_core::geometry::{self, ConfigSpec};
use hosoya_core::identities::{verify, verify_with, Form, IdentityId, Params};
use hosoya_core::{
    entry, fib, lucas, ClosedForm, GridPoint, RecursiveTable, ReportDocument, ReportResult, Run,
    Side,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn oracle() -> &'static RecursiveTable {
    static TABLE: OnceLock<RecursiveTable> = OnceLock::new();
    TABLE.get_or_init(|| RecursiveTable::build(220).unwrap())
}

fn point() -> impl Strategy<Value = GridPoint> {
    (0i64..200)
        .prop_flat_map(|r| (Just(r), 0..=r))
        .prop_map(|(r, k)| GridPoint::new(r, k).unwrap())
}

fn params(id: IdentityId, values: &[i64]) -> Params {
    id.params()
        .iter()
        .map(|n| n.to_string())
        .zip(values.iter().copied())
        .collect()
}

proptest! {
    #[test]
    fn addition_formula_across_the_memo(m in -300i64..5000, n in -300i64..5000) {
        prop_assert_eq!(fib(m + n), fib(m) * fib(n + 1) + fib(m - 1) * fib(n));
    }

    #[test]
    fn lucas_relation(n in -2000i64..6000) {
        prop_assert_eq!(lucas(n), fib(n - 1) + fib(n + 1));
        prop_assert_eq!(fib(2 * n), fib(n) * lucas(n));
    }

    #[test]
    fn closed_form_matches_oracle(p in point()) {
        prop_assert_eq!(oracle().get(p), Some(&entry(p)));
        prop_assert_eq!(entry(p), entry(p.mirror()));
    }

    #[test]
    fn oracle_and_closed_form_reports_agree(
        which in 0usize..IdentityId::ALL.len(),
        raw in proptest::collection::vec(0i64..25, 5),
    ) {
        let id = IdentityId::ALL[which];
        let values = &raw[..id.params().len()];
        let p = params(id, values);
        let direct = verify_with(id, &p, Form::Verified, &ClosedForm);
        let table = verify_with(id, &p, Form::Verified, oracle());
        match (direct, table) {
            (Ok(a), Ok(b)) => {
                prop_assert_eq!(&a.lhs, &b.lhs);
                prop_assert_eq!(&a.rhs, &b.rhs);
                prop_assert_eq!(&a.alternate, &b.alternate);
                if id != IdentityId::ZigzagParallel {
                    prop_assert!(a.holds, "{} {:?}", id, p);
                }
            }
            (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "{id} {p:?}: {a:?} vs {b:?}"),
        }
    }

    #[test]
    fn vertical_runs_share_x(start in point(), count in 1usize..30) {
        let set = geometry::vertical_run(start, count).unwrap();
        prop_assert_eq!(set.len(), count);
        prop_assert!(set.coords().all(|q| q.twice_x() == start.twice_x()));
    }

    #[test]
    fn point_values_match_entries(
        r in 4i64..120,
        c in 2i64..60,
        blocks in 1usize..6,
        count in 1usize..20,
        left in any::<bool>(),
    ) {
        let side = if left { Side::Left } else { Side::Right };
        let mut sets = vec![
            geometry::hockey_stick(2 + c, count, side).unwrap(),
            geometry::oblique_ladder_points(c, count).unwrap(),
            geometry::diagonal(c, count).unwrap(),
        ];
        if c <= r - 2 {
            sets.push(geometry::zigzag_6k5(GridPoint::new(r, c).unwrap(), blocks).unwrap());
        }
        for set in &sets {
            for p in &set.points {
                prop_assert_eq!(&p.value, &entry(p.point));
            }
        }
    }

    #[test]
    fn long_zigzag_points_sum(
        start in point(),
        half in 1usize..=20,
        backslash in any::<bool>(),
    ) {
        let n = 2 * half + 1;
        let first = if backslash { Run::Backslash } else { Run::Slash };
        let set = geometry::long_zigzag(start, n, first).unwrap();
        let p = |i: usize| set.get(&format!("p{i}")).unwrap().value.clone();
        for i in (3..=n).step_by(2) {
            prop_assert_eq!(p(i), p(i - 1) + p(i - 2));
        }
        let even: BigInt = (2..n).step_by(2).map(p).sum();
        prop_assert_eq!(even, p(n) - p(1));
        let id = IdentityId::LongZigzagAlt;
        let report = verify(
            id,
            &params(id, &[start.r(), start.k(), n as i64, backslash as i64]),
        )
        .unwrap();
        prop_assert!(report.holds);
    }

    #[test]
    fn braid_ratio_is_independent_of_m(l in 1i64..15, m in 0i64..30, r in 0i64..30) {
        let (m, r) = (m + l + 1, r + l + 1);
        let id = IdentityId::BraidNormalized;
        prop_assert!(verify(id, &params(id, &[m, r, l])).unwrap().holds);
    }

    #[test]
    fn config_specs_round_trip(
        r in 4i64..60,
        c in 2i64..30,
        count in 1usize..9,
    ) {
        let specs = [
            format!("vertical_run:r={r},k={},count={count}", r / 2),
            format!("long_zigzag:r={r},k={},n={},first=backslash", r / 3, 2 * count + 1),
            format!("hockey_stick:k={c},n={count},side=right"),
            format!("oblique_ladder:d={c},rungs={count}"),
            format!("diagonal:d={c},len={count}"),
        ];
        for text in specs {
            let spec: ConfigSpec = text.parse().unwrap();
            prop_assert_eq!(spec.to_string().parse::<ConfigSpec>().unwrap(), spec.clone());
            let json = serde_json::to_string(&spec).unwrap();
            prop_assert_eq!(serde_json::from_str::<ConfigSpec>(&json).unwrap(), spec.clone());
            prop_assert!(spec.materialize().is_ok());
        }
    }

    #[test]
    fn report_documents_round_trip(k in 1i64..60, j in 0i64..60) {
        let id = IdentityId::Catalan;
        let j = j.min(k);
        let report = verify(id, &params(id, &[k, j])).unwrap();
        let mut doc = ReportDocument::new("verify", Default::default());
        doc.results.push(ReportResult::Identity(report));
        let text = doc.to_json();
        let back = ReportDocument::from_json(&text).unwrap();
        prop_assert_eq!(back.to_json(), text);
        prop_assert_eq!(back, doc);
    }
}
