//! One line per acceptance criterion. Runs without the libtest harness so the
//! lines are always printed.

mod oracle;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use serde_json::json;

use vanset::catalog::{default_corpus, lookup, make, stretch_corpus, NamedGroup};
use vanset::verifier::{replay, TheoremId};
use vanset::{
    run_corpus, Analysis, Config, GroupContext, Permutation, Status, VerificationReport,
};

fn config() -> Config {
    Config::default()
}

fn corpus() -> &'static [NamedGroup] {
    static CORPUS: OnceLock<Vec<NamedGroup>> = OnceLock::new();
    CORPUS.get_or_init(default_corpus)
}

fn report() -> &'static VerificationReport {
    static REPORT: OnceLock<VerificationReport> = OnceLock::new();
    REPORT.get_or_init(|| run_corpus(corpus(), &config()))
}

fn verdicts_for(id: TheoremId) -> impl Iterator<Item = &'static vanset::TheoremVerdict> {
    report().verdicts().filter(move |v| v.theorem == id)
}

fn analysis(name: &str) -> Analysis {
    Analysis::new(&lookup(name).unwrap(), &config()).unwrap()
}

type Check = fn() -> String;

fn table_oracle() -> String {
    let mut checked = 0;
    for g in corpus().iter().filter(|g| g.order <= 200) {
        let ctx = GroupContext::new(g.group.clone(), &config()).unwrap();
        let t = ctx.character_table().unwrap();
        if let Err(e) = oracle::exact_class_algebra_check(&g.group, t) {
            panic!("{}: {e}", g.name);
        }
        let numeric = oracle::numeric_table(&g.group, t);
        assert!(oracle::numeric_agrees(t, &numeric, 1e-6), "{}: numeric table differs", g.name);
        checked += 1;
    }
    format!("{checked} groups")
}

fn orthogonality() -> String {
    let mut checked = 0;
    for g in corpus().iter().filter(|g| g.order <= 2000) {
        let ctx = GroupContext::new(g.group.clone(), &config()).unwrap();
        let t = ctx.character_table().unwrap();
        let e = t.values[0][0].conductor();
        let n = t.group_order as i64;
        for a in 0..t.len() {
            for b in 0..t.len() {
                let expect = if a == b { n } else { 0 };
                assert_eq!(
                    t.row_inner_product(a, b),
                    vanset::Cyclotomic::from_int(e, expect),
                    "{}: rows {a},{b}",
                    g.name
                );
            }
        }
        for i in 0..t.class_count() {
            for j in 0..t.class_count() {
                let expect = if i == j { n / t.classes[i].size as i64 } else { 0 };
                assert_eq!(
                    t.column_inner_product(i, j),
                    vanset::Cyclotomic::from_int(e, expect),
                    "{}: columns {i},{j}",
                    g.name
                );
            }
        }
        checked += 1;
    }
    format!("{checked} groups")
}

fn remarks() -> String {
    let s4 = analysis("S4");
    let p = s4.profile();
    let zero_orders: Vec<u64> = oracle::zero_columns(s4.table())
        .iter()
        .map(|&c| s4.table().classes[c].element_order)
        .collect();
    assert_eq!(oracle::max_pairwise_gcd(&zero_orders), 2);
    assert_eq!(p.pairwise_gcd_max, 2);
    assert!(p.satisfies_star_star);
    assert!(s4.structure.normal_2_complement().is_none());
    assert!(s4.structure.normal_p_complements[&3].is_none());

    let a5 = analysis("A5");
    let p = a5.profile();
    assert_eq!(p.vo.iter().copied().collect::<Vec<_>>(), vec![2, 3, 5]);
    assert!(p.vo_pairwise_coprime);
    assert!(!p.satisfies_star_star);
    let order5 = p.orders.iter().filter(|&&o| o == 5).count();
    assert_eq!(order5, 2);
    assert!(!a5.structure.solvable);

    let s5 = analysis("S5");
    let zero_orders: Vec<u64> = oracle::zero_columns(s5.table())
        .iter()
        .map(|&c| s5.table().classes[c].element_order)
        .collect();
    assert_eq!(oracle::max_pairwise_gcd(&zero_orders), 3);
    assert_eq!(s5.profile().pairwise_gcd_max, 3);
    assert!(!s5.structure.solvable);
    "S4, A5, S5".into()
}

fn theorem_a() -> String {
    let mut applicable = 0;
    for v in verdicts_for(TheoremId::A) {
        assert_ne!(v.status, Status::Fail, "{}: {}", v.group, v.witness);
        assert_ne!(v.status, Status::Resource, "{}", v.group);
        if v.status == Status::Pass {
            assert_eq!(v.witness["solvable"], json!(true));
            applicable += 1;
        }
    }
    format!("{applicable} groups with (**), all solvable")
}

fn theorem_b() -> String {
    let mut counts = (0, 0);
    for v in verdicts_for(TheoremId::B) {
        assert!(
            matches!(v.status, Status::Pass | Status::Flagged | Status::NotApplicable),
            "{}: {} {}",
            v.group,
            v.status,
            v.witness
        );
        if v.status == Status::Pass {
            counts.0 += 1;
        }
        if v.status == Status::Flagged {
            counts.1 += 1;
        }
    }
    let d12 = report().groups.iter().find(|g| g.group == "D12").unwrap();
    let b = d12.verdicts.iter().find(|v| v.theorem == TheoremId::B).unwrap();
    assert_eq!(b.status, Status::Pass);
    assert_eq!(b.witness["complement_order"], json!(3));
    assert_eq!(b.witness["a"]["metabelian"], json!(true));
    format!("{} pass, {} flagged", counts.0, counts.1)
}

fn corollary_c() -> String {
    let mut nonabelian = 0;
    for v in verdicts_for(TheoremId::C) {
        if v.status == Status::NotApplicable {
            continue;
        }
        nonabelian += 1;
        assert_eq!(v.status, Status::Pass, "{}: {}", v.group, v.witness);
        if v.witness["satisfies_star"] == json!(true) {
            assert_eq!(v.witness["frobenius_abelian_kernel_order_two_complement"], json!(true));
        }
    }
    for p in [3u64, 5, 7, 11, 13] {
        let a = Analysis::new(&make(&format!("dihedral:{p}")).unwrap(), &config()).unwrap();
        assert!(a.profile().satisfies_star, "D{}", 2 * p);
        let d = a.frobenius.as_ref().expect("Frobenius");
        assert_eq!(d.kernel.order(), p);
        assert!(d.kernel_abelian);
        assert_eq!(d.complement_order, 2);
    }
    format!("{nonabelian} non-abelian groups")
}

fn lemma_suite() -> String {
    let ids = [
        TheoremId::L2_1,
        TheoremId::L2_2,
        TheoremId::C2_3,
        TheoremId::L2_4,
        TheoremId::L2_5,
        TheoremId::L2_6,
        TheoremId::Brauer,
        TheoremId::T2_10,
        TheoremId::T4_1,
        TheoremId::T4_2,
        TheoremId::L2_9,
    ];
    for id in ids {
        let s = report().by_theorem[&id];
        assert_eq!(s.fail, 0, "{id}");
        assert_eq!(s.resource, 0, "{id}");
    }
    let mut disconnected = 0;
    for v in verdicts_for(TheoremId::T4_1) {
        if v.status == Status::NotApplicable {
            continue;
        }
        let comps = v.witness["components"].as_array().unwrap().len();
        assert!(comps <= 2, "{}", v.group);
        if comps == 2 {
            disconnected += 1;
            let w = &v.witness;
            assert!(
                !w["frobenius"].is_null()
                    || !w["two_frobenius"].is_null()
                    || !w["nearly_2_frobenius"].is_null(),
                "{}",
                v.group
            );
        }
    }
    for g in corpus() {
        let v = report()
            .groups
            .iter()
            .find(|r| r.group == g.name)
            .unwrap()
            .verdicts
            .iter()
            .find(|v| v.theorem == TheoremId::T4_1)
            .unwrap();
        let solvable = vanset::structure::is_solvable(&g.group);
        assert_eq!(v.status == Status::NotApplicable, !solvable, "{}", g.name);
    }
    let s4 = report().groups.iter().find(|g| g.group == "S4").unwrap();
    let t = s4.verdicts.iter().find(|v| v.theorem == TheoremId::T4_1).unwrap();
    assert_eq!(t.witness["two_frobenius"], json!({ "f": 4, "l": 12 }));
    for v in report().verdicts() {
        if matches!(v.status, Status::Fail | Status::Flagged) {
            let named = corpus().iter().find(|g| g.name == v.group).unwrap();
            assert!(replay(v, named, &config()).unwrap(), "{} {}", v.group, v.theorem);
        }
    }
    format!("disconnected solvable cases certified: {disconnected}")
}

fn stretch() -> String {
    let stretch = stretch_corpus();
    let m11 = stretch.iter().find(|g| g.name == "M11").unwrap();
    let a = Analysis::new(m11, &config()).unwrap();
    assert_eq!(a.order(), 7920);
    let t = a.table();
    assert_eq!(t.class_count(), 10);
    let r = t.degrees.iter().position(|&d| d == 45).expect("degree 45");
    assert!(t.is_p_defect_zero(r, 3));
    let zero_orders: Vec<u64> = (0..t.class_count())
        .filter(|&c| t.values[r][c].is_zero())
        .map(|c| t.classes[c].element_order)
        .collect();
    assert!(zero_orders.contains(&3) && zero_orders.contains(&6), "{zero_orders:?}");

    let a8 = stretch.iter().find(|g| g.name == "A8").unwrap();
    let a = Analysis::new(a8, &config()).unwrap();
    assert_eq!(a.order(), 20160);
    let t = a.table();
    assert!((0..t.len()).any(|r| t.degrees[r] > 1 && t.is_p_defect_zero(r, 5)));
    let p = a.profile();
    assert!(p.vo.contains(&5) && p.vo.contains(&15));
    for cycles in ["(1,2,3,4,5)", "(1,2,3,4,5)(6,7,8)"] {
        let x = Permutation::parse(cycles, 8).unwrap();
        let c = a.context.classes().class_of(&x).unwrap();
        assert!(p.is_vanishing(c), "{cycles}");
    }
    "M11 and A8".into()
}

fn determinism() -> String {
    let first = serde_json::to_vec(report()).unwrap();
    let second = serde_json::to_vec(&run_corpus(corpus(), &config())).unwrap();
    assert_eq!(first, second);
    format!("{} bytes identical", first.len())
}

fn main() {
    let criteria: [(u32, &str, Duration, Check); 9] = [
        (1, "character-table oracle equivalence", Duration::from_secs(60), table_oracle),
        (2, "orthogonality", Duration::from_secs(300), orthogonality),
        (3, "S4, A5 and S5 remarks", Duration::from_secs(30), remarks),
        (4, "Theorem A harness", Duration::from_secs(600), theorem_a),
        (5, "Theorem B harness", Duration::from_secs(600), theorem_b),
        (6, "Corollary C", Duration::from_secs(600), corollary_c),
        (7, "lemma suite", Duration::from_secs(600), lemma_suite),
        (8, "stretch groups M11 and A8", Duration::from_secs(1800), stretch),
        (9, "determinism", Duration::from_secs(600), determinism),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (n, name, limit, check) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check));
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= limit => (true, d),
            Ok(d) => (false, format!("{d}; over the {}s limit", limit.as_secs())),
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panicked".into());
                (false, msg)
            }
        };
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {n} {}: {name} ({:.2}s) {detail}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
