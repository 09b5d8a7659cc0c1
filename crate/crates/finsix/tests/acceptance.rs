//! The ten acceptance criteria, one PASS/FAIL line each.

use std::collections::BTreeSet;
use std::sync::Arc;

use finsix::category::samples;
use finsix::corr::{validate_setup, GeometricSetup};
use finsix::group::FiniteGroup;
use finsix::groupoid::FiniteGroupoid;
use finsix::hecke::{double_cosets, hecke_algebra, Subgroup};
use finsix::sheaf::{global_sections, Sheaf};
use finsix::suite::{run_suite, CheckRecord, Report, Status, SuiteConfig};
use finsix::Field;

type Outcome = Result<String, String>;

fn report(suites: &[&str], field: Field) -> Report {
    let cfg = SuiteConfig {
        suites: suites.iter().map(|s| s.to_string()).collect(),
        field,
        ..SuiteConfig::default()
    };
    run_suite(&cfg).expect("suite runs")
}

fn passed(r: &Report, id: &str) -> Result<CheckRecord, String> {
    let c = r.check(id).ok_or_else(|| format!("{id} missing"))?;
    match c.status {
        Status::Pass => Ok(c.clone()),
        _ => Err(format!("{id}: {:?} {}", c.status, c.witness)),
    }
}

fn leading_count(witness: &str) -> usize {
    witness
        .split_whitespace()
        .next()
        .and_then(|w| w.parse().ok())
        .unwrap_or(0)
}

fn setup_equivalence() -> Outcome {
    let cats = [samples::chain3(), samples::split_idempotent(), samples::arrow_times_c2()];
    let mut total = 0usize;
    for c in &cats {
        let n = c.num_morphisms();
        if n > 8 {
            return Err(format!("category with {n} morphisms"));
        }
        for mask in 0u32..(1 << n) {
            let s = GeometricSetup::listed(c.clone(), (0..n).filter(|i| mask >> i & 1 == 1)).map_err(|e| e.to_string())?;
            let r = validate_setup(&s);
            if r.diagonal_verdict() != r.cancellative_verdict() {
                return Err(format!("verdicts differ on mask {mask:#b}"));
            }
            total += 1;
        }
    }
    let expected: usize = cats.iter().map(|c| 1usize << c.num_morphisms()).sum();
    if total != expected {
        return Err(format!("{total} subsets, expected {expected}"));
    }
    Ok(format!("{total} subsets agree"))
}

fn corr_duals() -> Outcome {
    let r = report(&["corr"], Field::Rational);
    Ok(passed(&r, "corr.finset-duals")?.witness)
}

/// `H\G/K` by orbit enumeration, with `|H ∩ gKg⁻¹|` per orbit, stabilizers sorted.
fn brute_double_cosets(g: &FiniteGroup, h: &[usize], k: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; g.order()];
    let mut stabs = Vec::new();
    for x in g.elements() {
        if seen[x] {
            continue;
        }
        for &a in h {
            for &b in k {
                seen[g.mul(g.mul(a, x), b)] = true;
            }
        }
        let conj: BTreeSet<usize> = k.iter().map(|&b| g.mul(g.mul(x, b), g.inv(x))).collect();
        stabs.push(h.iter().filter(|a| conj.contains(a)).count());
    }
    stabs.sort_unstable();
    stabs
}

fn double_coset_agreement() -> Outcome {
    let mut pairs = 0;
    for g in [
        FiniteGroup::symmetric(3),
        FiniteGroup::symmetric(4),
        FiniteGroup::dihedral4(),
        FiniteGroup::quaternion(),
    ] {
        let subs = g.subgroups_up_to_conjugacy();
        for h in &subs {
            for k in &subs {
                let dc = double_cosets(&g, h, k).map_err(|e| e.to_string())?;
                let oracle = brute_double_cosets(&g, h, k);
                if dc.fiber_components != oracle.len() || dc.fiber_automorphisms != oracle {
                    return Err(format!("|H|={} |K|={}: {:?} vs {oracle:?}", h.len(), k.len(), dc.fiber_automorphisms));
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} subgroup pairs match brute force"))
}

fn six_functor_axioms() -> Outcome {
    let r = report(&["six"], Field::Rational);
    let bc = passed(&r, "six.base-change")?;
    let pf = passed(&r, "six.projection-formula")?;
    if leading_count(&bc.witness) < 200 || leading_count(&pf.witness) < 200 {
        return Err(format!("too few instances: {} / {}", bc.witness, pf.witness));
    }
    Ok(format!("{}; {}", bc.witness, pf.witness))
}

fn kernel_two_category() -> Outcome {
    let r = report(&["kernels"], Field::Rational);
    let comp = passed(&r, "kernels.composition")?;
    let pp = passed(&r, "kernels.phi-psi")?;
    if leading_count(&comp.witness) < 100 {
        return Err(comp.witness);
    }
    Ok(format!("{}; {}", comp.witness, pp.witness))
}

fn suave_prim() -> Outcome {
    let r = report(&["duality"], Field::Rational);
    let ids = ["duality.suave", "duality.prim", "duality.etale-proper"];
    let w = ids.iter().map(|id| passed(&r, id).map(|c| c.witness)).collect::<Result<Vec<_>, _>>()?;
    Ok(w.join("; "))
}

fn descent() -> Outcome {
    let r = report(&["descent"], Field::Rational);
    let ids = [
        "descent.points-over-point",
        "descent.point-over-bc2",
        "descent.point-over-bs3",
        "descent.random-surjection",
    ];
    for id in ids {
        passed(&r, id)?;
    }
    Ok(format!("{} covers", ids.len()))
}

fn mates() -> Outcome {
    let r = report(&["mates"], Field::Rational);
    Ok(passed(&r, "mates.exhaustive")?.witness)
}

/// `T_w` as the operator on functions on `G/K` summing over `x⁻¹y ∈ KwK`; returns
/// `(a, b)` with `A² = aI + bA`, and the number of `K`-orbits on `G/K`.
fn adjacency_oracle(g: &FiniteGroup, k: &[usize], w: usize) -> ((i64, i64), usize) {
    let mut cosets: Vec<BTreeSet<usize>> = Vec::new();
    for x in g.elements() {
        let c: BTreeSet<usize> = k.iter().map(|&b| g.mul(x, b)).collect();
        if !cosets.contains(&c) {
            cosets.push(c);
        }
    }
    let kwk: BTreeSet<usize> = k
        .iter()
        .flat_map(|&a| k.iter().map(move |&b| (a, b)))
        .map(|(a, b)| g.mul(g.mul(a, w), b))
        .collect();
    let rep = |c: &BTreeSet<usize>| *c.iter().next().expect("nonempty");
    let n = cosets.len();
    let a: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(kwk.contains(&g.mul(g.inv(rep(&cosets[i])), rep(&cosets[j]))))).collect())
        .collect();
    let sq: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|m| a[i][m] * a[m][j]).sum()).collect())
        .collect();
    let j = (0..n).find(|&j| a[0][j] == 1).expect("w outside K");
    let (p, q) = (sq[0][0] - a[0][0], sq[0][j]);
    for i in 0..n {
        for jj in 0..n {
            assert_eq!(sq[i][jj], p * i64::from(i == jj) + q * a[i][jj], "A² not in span of I, A");
        }
    }
    let orbits: BTreeSet<BTreeSet<usize>> = cosets
        .iter()
        .map(|c| {
            k.iter()
                .map(|&b| {
                    let moved: BTreeSet<usize> = c.iter().map(|&x| g.mul(b, x)).collect();
                    cosets.iter().position(|d| *d == moved).expect("coset")
                })
                .collect()
        })
        .collect();
    ((p, q), orbits.len())
}

fn hecke() -> Outcome {
    let g = FiniteGroup::symmetric(3);
    let k = Subgroup::generated_by(&g, &["(12)"]).map_err(|e| e.to_string())?;
    let alg = hecke_algebra(&k, &k.unit_weight(Field::Rational)).map_err(|e| e.to_string())?;
    let w = alg.support.iter().copied().find(|&s| s != g.identity()).ok_or("no T_w")?;
    let ((p, q), orbits) = adjacency_oracle(&g, &k.elems, w);
    if alg.dim() != orbits || orbits != 2 {
        return Err(format!("dim {} vs {orbits} orbits", alg.dim()));
    }
    let iw = alg.support.iter().position(|&s| s == w).expect("w");
    let ie = 1 - iw;
    let ww = &alg.constants[iw][iw];
    if ww[ie].to_string() != p.to_string() || ww[iw].to_string() != q.to_string() {
        return Err(format!("T_w² = {}T_e + {}T_w, oracle {p}, {q}", ww[ie], ww[iw]));
    }
    let r = report(&["hecke"], Field::Rational);
    for id in ["hecke.s3-c2", "hecke.anti-involution", "hecke.prim-duality"] {
        passed(&r, id)?;
    }
    Ok(format!("dim H = {orbits}; T_w² = {p}T_e + {q}T_w by adjacency operator; models, ι and prim duality agree"))
}

fn kunneth_sections() -> Outcome {
    for n in 1..=3 {
        let x = Arc::new(FiniteGroupoid::discrete_n(n));
        let d = global_sections(&Sheaf::unit(&x, Field::Rational)).map_err(|e| e.to_string())?.dims();
        if d != (n, n) {
            return Err(format!("Γ on {n} points: {d:?}"));
        }
    }
    let r = report(&["sections"], Field::Rational);
    let k = passed(&r, "sections.kunneth")?;
    if leading_count(&k.witness) < 20 {
        return Err(k.witness);
    }
    passed(&r, "sections.unit")?;
    let p = passed(&r, "sections.pyramid-symmetry")?;
    Ok(format!("{}; {}", k.witness, p.witness))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("setup-equivalence", setup_equivalence),
        ("corr-duals", corr_duals),
        ("double-cosets", double_coset_agreement),
        ("six-functor-axioms", six_functor_axioms),
        ("kernel-2-category", kernel_two_category),
        ("suave-prim", suave_prim),
        ("descent", descent),
        ("mates", mates),
        ("hecke", hecke),
        ("kunneth-sections", kunneth_sections),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(w) => println!("PASS {:>2} {name}: {w}", i + 1),
            Err(e) => {
                println!("FAIL {:>2} {name}: {e}", i + 1);
                failed.push(*name);
            }
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
