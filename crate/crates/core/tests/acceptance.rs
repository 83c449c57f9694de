//! Acceptance criteria, one line each. Exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use poset_operads::canon::canon_key;
use poset_operads::enumeration::{all_isoclasses, all_posets, count_table, parse_sequence, ClassFilter};
use poset_operads::hopf;
use poset_operads::operad::{labeled_grid, verify_axioms, verify_involution, verify_mixed};
use poset_operads::species::{phi, phi_inverse, verify_phi_morphism};
use poset_operads::structure::{
    br_split, closure_nabla, closure_triple, closure_wn, is_nabla_compatible, is_wn, nabla, theta, theta_inverse,
    verify_suboperad_relations,
};
use poset_operads::worked::worked_examples;
use poset_operads::{poset, CanonKey, Error, Family, FormalSum, Poset, VerificationReport};

type Outcome = Result<String, String>;

fn from_report(r: VerificationReport) -> Outcome {
    if r.passed() {
        Ok(format!("{} cases", r.cases))
    } else {
        Err(r.to_string())
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn worked() -> Outcome {
    let all = worked_examples().map_err(err)?;
    let groups = ["circ", "bullet", "comparison", "generation", "bracketing"];
    let relevant: Vec<_> = all.iter().filter(|e| groups.contains(&e.group)).collect();
    let bad: Vec<&str> = relevant.iter().filter(|e| !e.ok()).map(|e| e.id.as_str()).collect();
    ensure(bad.is_empty(), || format!("mismatched: {bad:?}"))?;
    let count = |g: &str| relevant.iter().filter(|e| e.group == g).count();
    ensure(
        count("circ") == 2 && count("bullet") == 2 && count("comparison") == 3 && count("bracketing") == 6,
        || "catalogue incomplete".into(),
    )?;
    ensure(count("generation") >= 12, || "generation identities missing".into())?;
    Ok(format!("{} examples", relevant.len()))
}

fn axioms() -> Outcome {
    let mut total = 0;
    for f in Family::ALL {
        let r = verify_axioms(f, 3);
        total += r.cases;
        if !r.passed() {
            return Err(r.to_string());
        }
    }
    Ok(format!("{total} cases over 4 families"))
}

fn quotient() -> Outcome {
    let mut cases = 0;
    for n in 1..=4 {
        let mut failure = None;
        all_posets(n, &mut |p: &Poset| {
            let labels = p.labels();
            for mask in 1u32..(1 << n) {
                let subset: Vec<&str> = (0..n)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| labels[i].as_str())
                    .collect();
                cases += 1;
                let convex = p.is_convex(&subset).expect("labels exist");
                let q = p.quotient(&subset, "q");
                let ok = match (&q, convex) {
                    (Ok(q), true) => q.len() == n - subset.len() + 1,
                    (Err(Error::NotConvex(_)), false) => true,
                    _ => false,
                };
                if !ok && failure.is_none() {
                    failure = Some(format!("{p} / {subset:?}: convex={convex}, quotient={q:?}"));
                }
            }
        })
        .map_err(err)?;
        if let Some(f) = failure {
            return Err(f);
        }
    }
    Ok(format!("{cases} subsets"))
}

fn phi_iso() -> Outcome {
    let a_grid = labeled_grid("a", 1, 3);
    let b_grid = labeled_grid("b", 1, 3);
    let mut cases = 0;
    for a in &a_grid {
        for v in a.labels() {
            for b in &b_grid {
                cases += 1;
                let ok = verify_phi_morphism(a, v.as_str(), b).map_err(err)?;
                ensure(ok, || format!("Φ fails on {a} at {v} with {b}"))?;
            }
        }
    }
    for n in 0..=4 {
        let mut all = Vec::new();
        all_posets(n, &mut |p: &Poset| all.push(p.clone())).map_err(err)?;
        for p in &all {
            let x = FormalSum::term(p.clone());
            ensure(phi_inverse(&phi(&x)) == x, || format!("Φ⁻¹Φ ≠ id on {p}"))?;
        }
        // A dense sum with distinct coefficients on each ground set.
        let x: FormalSum = all.iter().cloned().zip(1i64..).collect();
        ensure(phi_inverse(&phi(&x)) == x, || {
            format!("Φ⁻¹Φ ≠ id on the full sum, n={n}")
        })?;
        cases += all.len() + 1;
    }
    Ok(format!("{cases} cases"))
}

fn mixed() -> Outcome {
    from_report(verify_mixed(3, 2))
}

fn hopf_suites() -> Outcome {
    from_report(hopf::verify_all(4).map_err(err)?)
}

/// Partial orders on `n` points found by testing every strict relation.
fn naive_count(n: usize) -> u64 {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut count = 0;
    for mask in 0u64..(1 << pairs.len()) {
        let mut rel = vec![vec![false; n]; n];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            rel[i][j] = mask & (1 << k) != 0;
        }
        let antisym = (0..n).all(|i| (0..n).all(|j| !(rel[i][j] && rel[j][i])));
        let trans = (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| !(rel[i][j] && rel[j][k]) || rel[i][k])));
        if antisym && trans {
            count += 1;
        }
    }
    count
}

fn counting() -> Outcome {
    let sizes = |f: ClassFilter| -> Result<Vec<usize>, String> {
        (1..=4)
            .map(|n| all_isoclasses(n, f).map(|v| v.len()).map_err(err))
            .collect()
    };
    let connected = sizes(ClassFilter::Connected)?;
    ensure(connected == [1, 1, 3, 10], || {
        format!("connected classes {connected:?}")
    })?;
    let wn = sizes(ClassFilter::Wn)?;
    let nab = sizes(ClassFilter::Nabla)?;
    ensure(wn == [1, 2, 5, 15] && nab == [1, 2, 5, 15], || {
        format!("wn {wn:?}, nabla {nab:?}")
    })?;
    // Same classes, apart from the one forbidden shape on each side.
    let wn4: BTreeSet<CanonKey> = all_isoclasses(4, ClassFilter::Wn)
        .map_err(err)?
        .into_iter()
        .map(|c| c.key)
        .collect();
    let nab4: BTreeSet<CanonKey> = all_isoclasses(4, ClassFilter::Nabla)
        .map_err(err)?
        .into_iter()
        .map(|c| c.key)
        .collect();
    let n_key = canon_key(&poset("1 2 3 4", "1<3 2<3 2<4")).map_err(err)?;
    let p42_key = canon_key(&poset("1 2 3 4", "1<2 2<4 3<4")).map_err(err)?;
    ensure(
        !wn4.contains(&n_key) && wn4.contains(&p42_key) && nab4.contains(&n_key) && !nab4.contains(&p42_key),
        || "four-point class lists differ from the expected ones".into(),
    )?;

    let table = count_table(6).map_err(err)?;
    let labeled: Vec<u64> = table.rows.iter().take(4).map(|r| r.labeled).collect();
    let naive: Vec<u64> = (1..=4).map(naive_count).collect();
    ensure(labeled == [1, 3, 19, 219] && naive == labeled, || {
        format!("labeled {labeled:?}, naive {naive:?}")
    })?;
    ensure(
        table.rows.iter().take(5).all(|r| r.wn_labeled == r.nabla_labeled),
        || format!("wn/nabla labeled counts differ: {:?}", table.mismatched_rows()),
    )?;

    let a048172 = parse_sequence(include_str!("../fixtures/a048172.txt")).map_err(err)?;
    let a003430 = parse_sequence(include_str!("../fixtures/a003430.txt")).map_err(err)?;
    for r in &table.rows {
        ensure(a048172.get(r.n) == Some(&r.wn_labeled), || {
            format!(
                "n={}: wn labeled {} vs fixture {:?}",
                r.n,
                r.wn_labeled,
                a048172.get(r.n)
            )
        })?;
        ensure(a003430.get(r.n) == Some(&r.wn_isoclasses), || {
            format!(
                "n={}: wn classes {} vs fixture {:?}",
                r.n,
                r.wn_isoclasses,
                a003430.get(r.n)
            )
        })?;
    }
    Ok(format!("table to n={}", table.rows.len()))
}

fn keys_of(n: usize, f: ClassFilter) -> Result<BTreeSet<CanonKey>, String> {
    let mut out = BTreeSet::new();
    for k in 1..=n {
        out.extend(all_isoclasses(k, f).map_err(err)?.into_iter().map(|c| c.key));
    }
    Ok(out)
}

fn suboperads() -> Outcome {
    ensure(closure_wn(5).map_err(err)? == keys_of(5, ClassFilter::Wn)?, || {
        "closure_wn(5) differs".into()
    })?;
    ensure(
        closure_nabla(5).map_err(err)? == keys_of(5, ClassFilter::Nabla)?,
        || "closure_nabla(5) differs".into(),
    )?;
    let rel = verify_suboperad_relations();
    ensure(rel.passed(), || rel.to_string())?;

    let t4 = closure_triple(4).map_err(err)?;
    let c4: BTreeSet<CanonKey> = all_isoclasses(4, ClassFilter::Connected)
        .map_err(err)?
        .into_iter()
        .map(|c| c.key)
        .collect();
    ensure(c4.is_subset(&t4), || {
        "closure_triple(4) misses a connected class".into()
    })?;

    let t6: BTreeSet<CanonKey> = closure_triple(6)
        .map_err(err)?
        .into_iter()
        .filter(|k| k.size() == 6)
        .collect();
    let c6: BTreeSet<CanonKey> = all_isoclasses(6, ClassFilter::Connected)
        .map_err(err)?
        .into_iter()
        .map(|c| c.key)
        .collect();
    ensure(t6.is_subset(&c6) && t6.len() < c6.len(), || {
        format!("closure_triple(6) has {} of {} connected classes", t6.len(), c6.len())
    })?;
    Ok(format!("{} of {} connected 6-classes reachable", t6.len(), c6.len()))
}

fn theta_bijection() -> Outcome {
    let mut cases = 0;
    for n in 0..=5 {
        let mut wn = Vec::new();
        let mut nab = 0usize;
        all_posets(n, &mut |p: &Poset| {
            if is_wn(p) {
                wn.push(p.clone());
            }
            if is_nabla_compatible(p) {
                nab += 1;
            }
        })
        .map_err(err)?;
        let mut images = BTreeSet::new();
        for p in &wn {
            let t = theta(p).map_err(err)?;
            ensure(t.labels() == p.labels() && is_nabla_compatible(&t), || {
                format!("θ({p}) = {t}")
            })?;
            ensure(theta_inverse(&t).as_ref() == Ok(p), || format!("θ⁻¹θ ≠ id on {p}"))?;
            images.insert(t);
        }
        ensure(images.len() == wn.len() && wn.len() == nab, || {
            format!(
                "n={n}: {} WN, {} images, {nab} nabla-compatible",
                wn.len(),
                images.len()
            )
        })?;
        cases += wn.len();
    }
    let a_grid = labeled_grid("a", 1, 3);
    let b_grid = labeled_grid("b", 1, 3);
    for a in &a_grid {
        for b in &b_grid {
            let c = nabla(a, b).map_err(err)?;
            let (bc, rc) = br_split(&c).map_err(err)?;
            let (bb, rb) = br_split(b).map_err(err)?;
            ensure(bc == a.disjoint_union(&bb).map_err(err)?, || {
                format!("b({a}∇{b}) = {bc}")
            })?;
            ensure(rc == rb, || format!("r({a}∇{b}) = {rc}"))?;
            ensure(c.minimal() == b.minimal(), || format!("min({a}∇{b})"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} cases"))
}

fn involution() -> Outcome {
    from_report(verify_involution(3))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("worked examples", worked),
        ("operad axioms", axioms),
        ("quotient criterion", quotient),
        ("refinement isomorphism", phi_iso),
        ("mixed compatibilities", mixed),
        ("hopf suites", hopf_suites),
        ("counting", counting),
        ("suboperads", suboperads),
        ("theta", theta_bijection),
        ("involution", involution),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {:>2}. {name} ({detail}; {secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {:>2}. {name} ({secs:.1}s)\n{detail}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
