//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; exits nonzero on any failure.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::Rng;

use quasi_veronese::configs::{on_rnc, proj_equivalent, veronese_config};
use quasi_veronese::exactlin::{int, Mat, Span};
use quasi_veronese::fcurves::{enumerate_fpartitions, enumerate_sym_fcurves, fakhruddin_degree};
use quasi_veronese::gale::{gale_involution_check, goppa_witness, self_association_matrix, GoppaWeights};
use quasi_veronese::gitstab::{cont_predicate, hassett_contracted, hassett_inequality, symcont_predicate, CertificateKind};
use quasi_veronese::nefcone::{agss_family, contracted_set, git_contracted_set, rho, sym_curve_vector};
use quasi_veronese::sample;
use quasi_veronese::trees::{
    aux_independence_check, degree_map_solve, limit_config, semistable_partitions, verify_piecewise_map,
    DegreePartition, Edge, SpecialPoint,
};
use quasi_veronese::{Error, Linearization, Param, Rat, StableTree, Status, SymFPartition};

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s(e: Error) -> String {
    e.to_string()
}

/// Contraction by brute force over all integer certificate vectors.
fn contracted_oracle(n: usize, d: usize, f: &SymFPartition) -> bool {
    let s = f.sizes();
    let (n, d) = (n as i64, d as i64);
    let boxes = |lo: i64, hi: i64, total: i64, ok: &dyn Fn(usize, i64) -> bool| {
        for a in lo..=hi {
            for b in lo..=hi {
                for c in lo..=hi {
                    let last = total - a - b - c;
                    let v = [a, b, c, last];
                    if last >= lo && last <= hi && (0..4).all(|j| ok(j, v[j])) {
                        return true;
                    }
                }
            }
        }
        false
    };
    let alpha = |j: usize, a: i64| n * a <= (d + 1) * s[j] as i64;
    let beta = |j: usize, b: i64| (d + 1) * s[j] as i64 <= n * b;
    boxes(0, d, d, &alpha) || boxes(1, d + 2, d + 2, &beta)
}

fn c1_contracted_sets_agree() -> Result<String, String> {
    let mut pairs = 0;
    for n in 4..=24 {
        for d in 1..=rho(n) {
            let fk = contracted_set(n, d + 1).map_err(e2s)?;
            let git = git_contracted_set(n, d).map_err(e2s)?;
            ensure(fk == git, || format!("n={n} d={d}: {fk:?} vs {git:?}"))?;
            let oracle: BTreeSet<SymFPartition> =
                enumerate_sym_fcurves(n).into_iter().filter(|f| contracted_oracle(n, d, f)).collect();
            ensure(oracle == git, || format!("n={n} d={d}: brute force gives {oracle:?}"))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} (n,d) pairs"))
}

fn c2_dk_symmetry() -> Result<String, String> {
    let mut checked = 0;
    for n in 4..=24 {
        let curves = enumerate_sym_fcurves(n);
        for k in 2..=n - 2 {
            for f in &curves {
                let a = fakhruddin_degree(n, k, f).map_err(e2s)?;
                let b = fakhruddin_degree(n, n - k, f).map_err(e2s)?;
                ensure(a == b, || format!("n={n} k={k} F={f}: {a} vs {b}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} degree pairs"))
}

fn c3_goppa() -> Result<String, String> {
    let mut r = sample::rng(3);
    let cases = 120;
    for c in 0..cases {
        let n = r.gen_range(4..=12);
        let d = r.gen_range(1..=n - 3);
        let ts = sample::distinct_rationals(&mut r, n, &[]);
        let w = goppa_witness(&ts, d).map_err(e2s)?;
        ensure(w.ok(), || format!("case {c}: ts={ts:?} d={d}: {w:?}"))?;
        // Independent check: the λ-weighted dual really annihilates the primal.
        let lam = GoppaWeights::new(&ts).map_err(e2s)?;
        for a in 0..=d {
            for b in 0..=n - d - 2 {
                let s: Rat = ts
                    .iter()
                    .zip(lam.lambdas())
                    .map(|(t, l)| l * num_traits::pow(t.clone(), a + b))
                    .sum();
                ensure(s == int(0), || format!("case {c}: pairing ({a},{b}) is {s}"))?;
            }
        }
        ensure(on_rnc(&w.dual).map_err(e2s)?, || format!("case {c}: dual off the curve"))?;
    }
    Ok(format!("{cases} cases"))
}

fn c4_involution() -> Result<String, String> {
    let mut r = sample::rng(4);
    let cases = 110;
    for c in 0..cases {
        let n = r.gen_range(4..=10);
        let d = r.gen_range(1..=n - 3);
        let cfg = sample::general_configuration(&mut r, d, n);
        ensure(gale_involution_check(&cfg).map_err(e2s)?, || format!("case {c}: d={d} n={n}"))?;
    }
    Ok(format!("{cases} configurations"))
}

fn c5_self_association() -> Result<String, String> {
    let mut r = sample::rng(5);
    let cases = 120;
    for c in 0..cases {
        let m = r.gen_range(1..=8);
        let ts = sample::distinct_rationals(&mut r, 2 * m, &[]);
        let s = self_association_matrix(&ts).map_err(e2s)?;
        ensure(s.is_zero(), || format!("case {c}: {ts:?}"))?;
        ensure(s.rows() == m && s.cols() == m, || format!("case {c}: shape"))?;
    }
    Ok(format!("{cases} parameter lists"))
}

fn c6_aux_independence() -> Result<String, String> {
    let mut r = sample::rng(6);
    let cases = 60;
    for c in 0..cases {
        let comps = r.gen_range(1..=4);
        let n = r.gen_range((comps + 2).max(4)..=10);
        let d = r.gen_range(1..=4);
        let tree = sample::stable_tree(&mut r, n, comps).map_err(e2s)?;
        let deg = DegreePartition::new(&tree, sample::composition(&mut r, d, comps)).map_err(e2s)?;
        let a1 = sample::aux_divisor(&mut r, &tree, &deg).map_err(e2s)?;
        let a2 = sample::aux_divisor(&mut r, &tree, &deg).map_err(e2s)?;
        ensure(aux_independence_check(&tree, &deg, &a1, &a2).map_err(e2s)?, || {
            format!("case {c}: {} with degrees {deg}", quasi_veronese::json::tree_to_string(&tree))
        })?;
    }
    Ok(format!("{cases} trees"))
}

fn c7_smooth_case() -> Result<String, String> {
    let mut r = sample::rng(7);
    let cases = 20;
    for c in 0..cases {
        let d = r.gen_range(1..=4);
        let n = r.gen_range(d + 2..=10);
        let mut coords: Vec<Param> = sample::distinct_rationals(&mut r, n, &[]).into_iter().map(Param::Finite).collect();
        if c % 3 == 0 {
            coords[r.gen_range(0..n)] = Param::Infinity;
        }
        let tree = StableTree::smooth(&coords).map_err(e2s)?;
        let deg = DegreePartition::new(&tree, vec![d]).map_err(e2s)?;
        let aux = sample::aux_divisor(&mut r, &tree, &deg).map_err(e2s)?;
        let limit = limit_config(&tree, &deg, &aux).map_err(e2s)?;
        let ver = veronese_config(d, &coords).map_err(e2s)?;
        ensure(proj_equivalent(&limit, &ver).map_err(e2s)?, || format!("case {c}: d={d} {coords:?}"))?;
    }
    Ok(format!("{cases} one-component trees"))
}

fn c8_unique_map() -> Result<String, String> {
    let mut r = sample::rng(8);
    let cases = 40;
    let mut resamples = 0;
    let mut c = 0;
    while c < cases {
        let d = r.gen_range(1..=4);
        let e = r.gen_range(0..=d);
        let n = r.gen_range(3..=8);
        if n * d < (d + 1) * (e + 1) - 1 {
            continue;
        }
        let tree = sample::trivalent_tree(&mut r, n).map_err(e2s)?;
        let mut solved = None;
        for _ in 0..16 {
            let cs = sample::generic_constraints(&mut r, n, d, e).map_err(e2s)?;
            match degree_map_solve(&tree, e, &cs) {
                Ok(maps) => {
                    solved = Some((cs, maps));
                    break;
                }
                Err(Error::NonGenericConstraints(_)) => resamples += 1,
                Err(err) => return Err(format!("case {c}: {err}")),
            }
        }
        let (cs, maps) = solved.ok_or_else(|| format!("case {c}: constraints never generic (n={n} d={d} e={e})"))?;
        ensure(maps.len() == 1, || format!("case {c}: n={n} d={d} e={e} gave {} maps", maps.len()))?;
        let m = &maps[0];
        ensure(verify_piecewise_map(&tree, &cs, m, e), || format!("case {c}: map fails verification"))?;
        for con in &cs {
            let (v, t) = tree.mark(con.index);
            let image = m.vertex_maps[v].eval(t);
            ensure(con.contains(&image), || format!("case {c}: mark {} misses its subspace", con.index + 1))?;
        }
        c += 1;
    }
    Ok(format!("{cases} instances, {resamples} resamples"))
}

fn symmetric_two_component_tree() -> Result<StableTree, Error> {
    let pts = |a: usize, b: usize| {
        vec![
            SpecialPoint::mark(a, Param::int(0)),
            SpecialPoint::mark(b, Param::int(1)),
            SpecialPoint::edge("e1", Param::Infinity),
        ]
    };
    StableTree::new(vec![pts(0, 1), pts(2, 3)], vec![Edge { id: "e1".into(), a: 0, b: 1 }])
}

fn c9_unique_stable_partition() -> Result<String, String> {
    let mut r = sample::rng(9);
    let cases = 40;
    for c in 0..cases {
        let comps = r.gen_range(1..=4);
        let n = r.gen_range((comps + 2).max(5)..=9);
        let d = r.gen_range(1..=(n - 3).min(4));
        let tree = sample::stable_tree(&mut r, n, comps).map_err(e2s)?;
        let l = sample::random_linearization(&mut r, d, n, true);
        let sel = semistable_partitions(&tree, &l).map_err(e2s)?;
        let stable = sel.stable();
        ensure(stable.len() == 1 && sel.entries.len() == 1, || {
            format!(
                "case {c}: {} d={d} weights={:?}: {} stable of {} surviving",
                quasi_veronese::json::tree_to_string(&tree),
                l.weights().iter().map(ToString::to_string).collect::<Vec<_>>(),
                stable.len(),
                sel.entries.len()
            )
        })?;
    }
    let tree = symmetric_two_component_tree().map_err(e2s)?;
    let sel = semistable_partitions(&tree, &Linearization::symmetric(1, 4).map_err(e2s)?).map_err(e2s)?;
    ensure(sel.is_ambiguous(), || "symmetric case not flagged".into())?;
    ensure(sel.entries.iter().all(|(_, v)| v.status == Status::StrictlySemistable), || {
        "symmetric case has a non-strict survivor".into()
    })?;
    Ok(format!("{cases} off-wall cases, symmetric case flagged with {} survivors", sel.entries.len()))
}

fn c10_hassett_inclusion() -> Result<String, String> {
    let mut r = sample::rng(10);
    let mut implications = 0u64;
    let mut audited = 0u64;
    for n in 4..=12 {
        let mut ls: Vec<Linearization> = Vec::new();
        for d in 1..=n - 3 {
            ls.push(Linearization::symmetric(d, n).map_err(e2s)?);
            for j in 0..20 {
                ls.push(sample::random_linearization(&mut r, d, n, j % 2 == 0));
            }
        }
        for (idx, p) in enumerate_fpartitions(n).enumerate() {
            for l in &ls {
                if !hassett_contracted(l, &p).map_err(e2s)? {
                    continue;
                }
                implications += 1;
                let cert = cont_predicate(l, &p).map_err(e2s)?;
                let cert = cert.ok_or_else(|| format!("n={n} d={} {p:?}: no certificate", l.d()))?;
                if idx % 101 == 0 {
                    audited += 1;
                    ensure(hassett_inequality(l, &p).map_err(e2s)?, || format!("n={n}: inequality disagrees on {p:?}"))?;
                    ensure(cert.kind == CertificateKind::AlphaFamily, || "expected an alpha certificate".into())?;
                    ensure(cert.vector.iter().sum::<u64>() == l.d() as u64, || format!("{cert:?} has the wrong sum"))?;
                    for (j, b) in p.blocks().iter().enumerate() {
                        ensure(l.weight_of(b) >= int(cert.vector[j] as i64), || format!("{cert:?} exceeds leg {j}"))?;
                    }
                }
            }
        }
    }
    Ok(format!("{implications} contracted pairs, {audited} certificates audited"))
}

fn c11_face_family() -> Result<String, String> {
    let mut pairs = 0;
    for n in 4..=24 {
        let p = rho(n);
        for d in 1..=p {
            if n % (d + 1) != 0 {
                continue;
            }
            let fam = agss_family(n, d).map_err(e2s)?;
            ensure(fam.curves.len() + 1 == p, || format!("n={n} d={d}: {} curves", fam.curves.len()))?;
            let mut rows = Vec::new();
            for f in &fam.curves {
                let deg = fakhruddin_degree(n, d + 1, f).map_err(e2s)?;
                ensure(deg == 0, || format!("n={n} d={d}: D_{}·{f} = {deg}", d + 1))?;
                ensure(symcont_predicate(n, d, f).map_err(e2s)?.is_some(), || format!("n={n} d={d}: {f} not contracted"))?;
                let v = sym_curve_vector(n, f).map_err(e2s)?;
                rows.push(v.degrees.iter().map(|&x| int(x as i64)).collect::<Vec<_>>());
            }
            let rank = if rows.is_empty() { 0 } else { Mat::from_rows(p, rows).map_err(e2s)?.rank() };
            ensure(rank + 1 == p, || format!("n={n} d={d}: rank {rank}"))?;
            pairs += 1;
        }
        let mut span = Span::new(p);
        for f in enumerate_sym_fcurves(n) {
            let v = sym_curve_vector(n, &f).map_err(e2s)?;
            span.insert(&v.degrees.iter().map(|&x| int(x as i64)).collect::<Vec<_>>());
        }
        ensure(span.rank() == p, || format!("n={n}: symmetric F-curves reach rank {} < {p}", span.rank()))?;
    }
    Ok(format!("{pairs} (n,d) pairs"))
}

fn main() {
    let criteria: [(&str, Check); 11] = [
        ("contracted sets agree, n <= 24", c1_contracted_sets_agree),
        ("D_k = D_{n-k} on symmetric F-curves, n <= 24", c2_dk_symmetry),
        ("Goppa duality witness", c3_goppa),
        ("Gale transform is an involution", c4_involution),
        ("self-association matrix vanishes", c5_self_association),
        ("limit configuration independent of aux divisor", c6_aux_independence),
        ("one-component limit is Veronese", c7_smooth_case),
        ("exactly one constrained map", c8_unique_map),
        ("unique stable degree partition", c9_unique_stable_partition),
        ("Hassett contraction implies GIT contraction, n <= 12", c10_hassett_inclusion),
        ("face-spanning contracted family", c11_face_family),
    ];
    let started = Instant::now();
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = check();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS [{:>2}] {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL [{:>2}] {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed ({:.1}s)",
        criteria.len() - failures,
        started.elapsed().as_secs_f64()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
