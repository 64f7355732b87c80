use std::collections::BTreeSet;

use exgraph::canon::canonical_form;
use exgraph::families::GraphFamily;
use exgraph::formulas::{binom2, edge_formula, EdgeFormula};
use exgraph::graph::{complete, cycle, disjoint_union, empty, matching, path, star};
use exgraph::invariants::{is_family_free, matching_number};
use exgraph::oracle::{exact_ex, naive_ex, Budget, ExResult, Problem};
use exgraph::Graph;

fn pool() -> Vec<(&'static str, Graph)> {
    vec![
        ("K3", complete(3)),
        ("P4", path(4)),
        ("C4", cycle(4).unwrap()),
        ("C5", cycle(5).unwrap()),
        ("M2", matching(2)),
        ("M3", matching(3)),
        ("K13", star(4)),
    ]
}

fn families() -> Vec<(String, GraphFamily)> {
    let pool = pool();
    let mut out = Vec::new();
    for i in 0..pool.len() {
        out.push((
            pool[i].0.to_owned(),
            GraphFamily::from_graphs([pool[i].1.clone()]).unwrap(),
        ));
        for j in i + 1..pool.len() {
            let fam = GraphFamily::from_graphs([pool[i].1.clone(), pool[j].1.clone()]).unwrap();
            out.push((format!("{}+{}", pool[i].0, pool[j].0), fam));
        }
    }
    out
}

fn codes(r: &ExResult) -> BTreeSet<String> {
    r.witnesses
        .iter()
        .map(|g| canonical_form(g).unwrap().to_string())
        .collect()
}

fn bnb(n: usize, fam: &GraphFamily) -> ExResult {
    exact_ex(&Problem::new(n, fam).unwrap(), &Budget::default()).unwrap()
}

#[test]
fn engines_agree_on_small_grid() {
    for (name, fam) in families() {
        for n in 0..=6 {
            let p = Problem::new(n, &fam).unwrap();
            let a = exact_ex(&p, &Budget::default()).unwrap();
            let b = naive_ex(&p).unwrap();
            assert!(a.exact && b.exact);
            assert_eq!(a.value, b.value, "{name} n={n}");
            assert_eq!(codes(&a), codes(&b), "{name} n={n} witnesses");
            for w in &a.witnesses {
                assert_eq!(w.edge_count(), a.value);
                assert!(is_family_free(w, p.family()));
            }
        }
    }
}

#[test]
fn monotone_in_n_and_family() {
    let fams = families();
    for (name, fam) in &fams {
        let values: Vec<usize> = (0..=8).map(|n| bnb(n, fam).value).collect();
        assert!(
            values.windows(2).all(|w| w[0] <= w[1]),
            "{name}: {values:?}"
        );
    }
    let pool = pool();
    for (i, (a, ga)) in pool.iter().enumerate() {
        let single = GraphFamily::from_graphs([ga.clone()]).unwrap();
        for (b, gb) in pool.iter().skip(i + 1) {
            let pair = GraphFamily::from_graphs([ga.clone(), gb.clone()]).unwrap();
            for n in 4..=7 {
                assert!(
                    bnb(n, &pair).value <= bnb(n, &single).value,
                    "{a}+{b} n={n}"
                );
            }
        }
    }
}

#[test]
fn witnesses_respect_matching_bound() {
    for s in 1..=3 {
        for (name, g) in pool() {
            let fam = GraphFamily::from_graphs([g]).unwrap();
            for n in 3..=8 {
                let p = Problem::with_matching_bound(n, &fam, s).unwrap();
                let r = exact_ex(&p, &Budget::default()).unwrap();
                let bound = edge_formula(EdgeFormula::EgMax { n, s }).unwrap().value;
                assert!(r.value as u64 <= bound, "{name} n={n} s={s}");
                for w in &r.witnesses {
                    assert!(matching_number(w) <= s);
                }
            }
        }
    }
}

#[test]
fn path_bound() {
    for k in 4..=6 {
        let fam = GraphFamily::from_graphs([path(k)]).unwrap();
        for n in 1..=8 {
            let v = bnb(n, &fam).value;
            assert!(2 * v <= (k - 2) * n, "P{k} n={n}: {v}");
        }
    }
}

#[test]
fn isolated_vertices_matter() {
    for m in 0..=4 {
        let fam = GraphFamily::from_graphs([disjoint_union(&complete(2), &empty(m))]).unwrap();
        for n in 0..=8 {
            let expected = if n < m + 2 { binom2(n) as usize } else { 0 };
            assert_eq!(bnb(n, &fam).value, expected, "m={m} n={n}");
            if n <= 6 {
                assert_eq!(
                    naive_ex(&Problem::new(n, &fam).unwrap()).unwrap().value,
                    expected
                );
            }
        }
    }
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let fam = GraphFamily::from_graphs([cycle(4).unwrap(), matching(4)]).unwrap();
    let p = Problem::new(9, &fam).unwrap();
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| exact_ex(&p, &Budget::default()).unwrap())
    };
    let one = run(1);
    for threads in [2, 4, 8] {
        let many = run(threads);
        assert_eq!(one.value, many.value);
        assert_eq!(one.witnesses, many.witnesses);
        assert_eq!(one.witnesses_truncated, many.witnesses_truncated);
    }
}
