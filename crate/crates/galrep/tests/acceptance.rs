//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Tolerances and thresholds are pinned in code. The full-box Hunter
//! search (hours) is present but ignored by default; run it with
//! `cargo test --release -- --ignored full_hunter_search`.

use galrep::algebra::{valuation, IntPoly};
use galrep::elliptic::verify_torsion_field;
use galrep::gl2::{self, CharPoly2, F5};
use galrep::hecke;
use galrep::hunter::{enumerate_raw_a0_window, enumerate_search, SearchSpec, Window};
use galrep::numberfield::{
    certify_discriminant, compatible_orders, dedekind_p_maximal, frobenius_record,
    total_ram_congruence,
};
use galrep::pipeline::{assets::AssetBundle, run_pipeline, PipelineOptions, VerificationReport};
use galrep::resolvent::{
    same_splitting_field_heuristic, sextic_resolvent_with_residual, SplittingFieldVerdict,
};
use num_bigint::BigInt;
use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::sync::OnceLock;

fn bundle() -> &'static AssetBundle {
    static CELL: OnceLock<AssetBundle> = OnceLock::new();
    CELL.get_or_init(|| {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
        AssetBundle::load_dir(&dir).expect("shipped assets load")
    })
}

fn report() -> &'static VerificationReport {
    static CELL: OnceLock<VerificationReport> = OnceLock::new();
    CELL.get_or_init(|| {
        run_pipeline(bundle(), &PipelineOptions::default()).expect("pipeline runs")
    })
}

fn target() -> BigInt {
    BigInt::from(5).pow(5) * BigInt::from(163).pow(4)
}

fn criterion(n: u32, desc: &str, ok: bool) {
    println!(
        "criterion {n:02}: {} - {desc}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {n} failed: {desc}");
}

/// Derived trace systems in pipeline order, recomputed here from Table 1.
fn derived_traces() -> Vec<hecke::TraceSystem> {
    let systems = &bundle().table1.systems;
    let pairs = hecke::pair_systems(systems).expect("unique pairing");
    pairs
        .into_iter()
        .map(|(i, j)| hecke::recover_trace(&systems[i], &systems[j]).expect("consistent pair"))
        .collect()
}

#[test]
fn criterion_01_trace_recovery_reproduces_printed_table() {
    let traces = derived_traces();
    let printed: BTreeSet<Vec<(u64, u8)>> = bundle()
        .table2
        .rows
        .iter()
        .map(|r| r.entries.iter().map(|(&l, &b)| (l, b.0)).collect())
        .collect();
    let derived: BTreeSet<Vec<(u64, u8)>> = traces
        .iter()
        .map(|t| t.entries.iter().map(|(&l, &b)| (l, b.0)).collect())
        .collect();
    criterion(
        1,
        "pairing + trace recovery reproduce the three printed trace rows exactly (all l < 50)",
        printed == derived && traces.len() == 3,
    );
}

#[test]
fn criterion_02_order_rows_biject_onto_printed_table() {
    let traces = derived_traces();
    let preds: Vec<_> = traces.iter().map(hecke::predict_orders).collect();
    // entry-wise set equality, bijectively
    let mut used: BTreeSet<usize> = BTreeSet::new();
    let mut permutation: BTreeMap<String, String> = BTreeMap::new();
    let mut ok = true;
    for (t, p) in traces.iter().zip(&preds) {
        let derived: BTreeMap<u64, BTreeSet<u32>> =
            p.entries.iter().map(|(&l, s)| (l, s.gl2.clone())).collect();
        let mut hit = None;
        for (idx, row) in bundle().table3.rows.iter().enumerate() {
            if row.entries == derived && !used.contains(&idx) {
                hit = Some(idx);
                break;
            }
        }
        match hit {
            Some(idx) => {
                used.insert(idx);
                permutation.insert(
                    format!("{}+{}", t.provenance.0, t.provenance.1),
                    bundle().table3.rows[idx].name.clone(),
                );
            }
            None => ok = false,
        }
    }
    // the ambiguous entries are reproduced as printed
    let spot = |row: &str, l: u64, want: &[u32]| {
        bundle()
            .table3
            .rows
            .iter()
            .find(|r| r.name == row)
            .map(|r| r.entries[&l] == want.iter().copied().collect::<BTreeSet<u32>>())
            .unwrap_or(false)
    };
    ok &= spot("n1", 19, &[4, 20]) && spot("n1", 29, &[4, 20]);
    ok &= spot("n2", 19, &[4, 20]) && spot("n2", 29, &[4, 20]) && spot("n2", 41, &[2, 10]);
    // the permutation is derived and reported by the pipeline
    let rp = &report().row_permutation;
    ok &= rp.get("b1").map(String::as_str) == Some("n2")
        && rp.get("b2").map(String::as_str) == Some("n3")
        && rp.get("b3").map(String::as_str) == Some("n1");
    criterion(
        2,
        "derived order rows biject onto printed rows (sets; 4,20 and 2,10 included), permutation reported",
        ok && used.len() == 3,
    );
}

#[test]
fn criterion_03_gl2_oracle_cross_validation() {
    let mut ok = true;
    let mut checked = 0;
    for cp in CharPoly2::all() {
        let (gl2_an, pgl_an) = gl2::analytic_orders_for_charpoly(cp);
        ok &= gl2_an == gl2::orders_for_charpoly(cp);
        ok &= pgl_an == gl2::pgl_orders_for_charpoly(cp);
        checked += 1;
    }
    criterion(
        3,
        "analytic F25 order sets equal exhaustive enumeration for all 20 (b,d) pairs, zero tolerance",
        ok && checked == 20,
    );
}

#[test]
fn criterion_04_quintic_certification() {
    let mut ok = true;
    for q in &bundle().quintics.polys {
        let cert = certify_discriminant(&q.coeffs, &target(), &[5, 163]).unwrap();
        ok &= cert.ok;
        ok &= cert.square_cofactor_root.is_some();
        ok &= cert.dedekind[&163];
        // computed Dedekind truth at 5: fails for g1 (index divisible by 5,
        // certified through the maximal-generator fallback), holds for g2, g3
        match q.name.as_str() {
            "g1" => {
                ok &= !cert.dedekind[&5];
                let w = cert.fallback.get(&5).expect("fallback witness for g1");
                ok &= dedekind_p_maximal(&w.minpoly, 5).unwrap();
                ok &= valuation(&w.minpoly.discriminant().unwrap(), 5) == 5;
                ok &= w.minpoly.degree() == Some(5);
            }
            _ => ok &= cert.dedekind[&5],
        }
        let a5 = total_ram_congruence(&q.coeffs, 5);
        let a163 = total_ram_congruence(&q.coeffs, 163);
        ok &= a5.is_some() && a163.is_some();
        if q.name == "g1" {
            ok &= a5 == Some(1) && a163 == Some(0);
        }
    }
    criterion(
        4,
        "each quintic has disc = 5^5 163^4 x square, is maximal at 5 and 163 (g1 via fallback generator), and is (x-a)^5 at both primes",
        ok,
    );
}

#[test]
fn criterion_05_frobenius_compatibility_unique_row() {
    let traces = derived_traces();
    let preds: Vec<_> = traces.iter().map(hecke::predict_orders).collect();
    let primes = bundle().table_primes(50);
    let mut assigned_rows = BTreeSet::new();
    let mut ok = true;
    for q in &bundle().quintics.polys {
        let mut compatible = Vec::new();
        for (idx, p) in preds.iter().enumerate() {
            let mut usable = 0;
            let all = primes.iter().all(|&l| match frobenius_record(&q.coeffs, l) {
                Ok(rec) => {
                    usable += 1;
                    let c = compatible_orders(rec.order, &p.entries[&l]);
                    c.strong && c.weak
                }
                Err(_) => true, // skipped primes are justified, not silent failures
            });
            if all && usable > 0 {
                compatible.push(idx);
            }
        }
        ok &= compatible.len() == 1;
        if let [idx] = compatible[..] {
            ok &= assigned_rows.insert(idx);
        }
    }
    criterion(
        5,
        "each quintic's Frobenius orders are pgl-exact and GL2-divisible (quotient | 4) for exactly one derived row",
        ok && assigned_rows.len() == 3,
    );
}

#[test]
fn criterion_06_hunter_windowed_search() {
    let mut ok = true;
    // residues (a mod 5, 0 mod 163) determined by each constant term
    for (name, a5) in [("g1", 1u64), ("g2", 3), ("g3", 0)] {
        let q = bundle()
            .quintics
            .polys
            .iter()
            .find(|p| p.name == name)
            .unwrap();
        let spec = SearchSpec {
            degree: 5,
            target: target(),
            congruence_primes: vec![5, 163],
            residues: Some(vec![(5, a5), (163, 0)]),
            allowed_traces: vec![0, 1, 2],
            window: Some(Window { center: q.coeffs.clone(), steps: 5 }),
        };
        let result = enumerate_search(&spec, None).unwrap();
        ok &= result.candidates.len() == 1 && result.candidates[0].poly == q.coeffs;
        ok &= result.stats.enumerated == 11u64.pow(4);
    }
    // pruned and unpruned enumeration agree on a raw window along the
    // constant coefficient
    let g1 = &bundle().quintics.polys[0].coeffs;
    let spec = SearchSpec {
        degree: 5,
        target: target(),
        congruence_primes: vec![5, 163],
        residues: Some(vec![(5, 1), (163, 0)]),
        allowed_traces: vec![0],
        window: Some(Window { center: g1.clone(), steps: 1 }),
    };
    let raw = enumerate_raw_a0_window(&spec, (307744 - 816, 307744 + 816)).unwrap();
    let pruned = enumerate_search(&spec, None).unwrap();
    let raw_polys: BTreeSet<_> = raw.candidates.iter().map(|c| c.poly.clone()).collect();
    ok &= raw_polys.len() == 1 && raw_polys.contains(g1);
    ok &= raw_polys
        .iter()
        .all(|p| pruned.candidates.iter().any(|c| &c.poly == p));
    criterion(
        6,
        "windowed search (step 815, +-5) recovers exactly each quintic; pruned and raw enumeration agree",
        ok,
    );
}

/// Full-box search over all residue classes: the hours-long optional tier.
#[test]
#[ignore = "full search takes hours; run explicitly"]
fn full_hunter_search_finds_exactly_three_fields() {
    let spec = SearchSpec {
        degree: 5,
        target: target(),
        congruence_primes: vec![5, 163],
        residues: None,
        allowed_traces: vec![0, 1, 2],
        window: None,
    };
    let result = enumerate_search(&spec, None).unwrap();
    assert_eq!(result.candidates.len(), 3, "{:?}", result.stats);
    let names: BTreeSet<_> = bundle()
        .quintics
        .polys
        .iter()
        .map(|p| p.coeffs.clone())
        .collect();
    for c in &result.candidates {
        // the published polynomials themselves, or isomorphic fields found
        // under a different generator; compare by fingerprint
        let matches_published = names.contains(&c.poly)
            || bundle().quintics.polys.iter().any(|p| {
                galrep::numberfield::fingerprint(&p.coeffs)
                    .map(|fp| fp == c.fingerprint)
                    .unwrap_or(false)
            });
        assert!(matches_published, "unexpected field {}", c.poly);
    }
    println!("criterion 06 (optional full tier): PASS - exactly three deduped fields");
}

#[test]
fn criterion_07_resolvents_consistent_with_printed_sextics() {
    // computed assignment: g1 <-> f1, g2 <-> f2, g3 <-> f3 (validated via
    // the row assignment in the pipeline; here the direct consistency)
    let mut ok = true;
    for (gname, fname) in [("g1", "f1"), ("g2", "f2"), ("g3", "f3")] {
        let q = bundle().quintics.polys.iter().find(|p| p.name == gname).unwrap();
        let f = bundle().sextics.polys.iter().find(|p| p.name == fname).unwrap();
        let (r, residual) = sextic_resolvent_with_residual(&q.coeffs, 256).unwrap();
        ok &= residual < 1e-6;
        ok &= r.degree() == Some(6) && r.is_monic();
        ok &= matches!(
            same_splitting_field_heuristic(&r, &f.coeffs, 50).unwrap(),
            SplittingFieldVerdict::ConsistentUpToBound { primes_compared } if primes_compared >= 10
        );
    }
    criterion(
        7,
        "resolvents have integer coefficients (residual < 1e-6 at 256 bits) and match the printed sextics at every usable l < 50",
        ok,
    );
}

#[test]
fn criterion_08_degree24_orders_and_inertial_degrees() {
    let traces = derived_traces();
    let preds: Vec<_> = traces.iter().map(hecke::predict_orders).collect();
    let primes = bundle().table_primes(50);
    let mut ok = true;
    let deg24: Vec<(&str, &IntPoly)> = bundle()
        .table4
        .polys
        .iter()
        .map(|p| (p.name.as_str(), &p.coeffs))
        .chain(std::iter::once((
            bundle().table5.name.as_str(),
            &bundle().table5.coeffs,
        )))
        .collect();
    let mut assigned = BTreeSet::new();
    for (name, poly) in deg24 {
        let mut compatible = Vec::new();
        for (idx, p) in preds.iter().enumerate() {
            let all = primes.iter().all(|&l| match frobenius_record(poly, l) {
                Ok(rec) => u32::try_from(rec.order)
                    .map(|o| p.entries[&l].gl2.contains(&o))
                    .unwrap_or(false),
                Err(_) => true,
            });
            if all {
                compatible.push(idx);
            }
        }
        ok &= compatible.len() == 1;
        if let [idx] = compatible[..] {
            ok &= assigned.insert(idx);
        }
        let _ = name;
    }
    let torsion = verify_torsion_field(&bundle().table5.coeffs);
    ok &= torsion.mod47_irreducible && torsion.mod19_has_degree_20_part;
    criterion(
        8,
        "degree-24 polynomials reproduce GL2-level orders at every usable l < 50; table-5 poly irreducible mod 47 with a degree-20 part mod 19",
        ok && assigned.len() == 3,
    );
}

#[test]
fn criterion_09_elliptic_traces_match_one_row() {
    let traces = derived_traces();
    let table = bundle().curve.trace_table(50);
    let mut ok = table.entries.iter().all(|(&l, &a)| (a * a) as u64 <= 4 * l);
    ok &= table.entries[&2] == 0 && table.entries[&3] == 0 && table.entries[&7] == 2;
    let matches: Vec<_> = traces
        .iter()
        .filter(|t| {
            t.entries
                .iter()
                .all(|(l, b)| table.entries[l].rem_euclid(5) as u8 == b.0)
        })
        .collect();
    ok &= matches.len() == 1;
    criterion(
        9,
        "brute-force traces satisfy Hasse, match one derived trace row mod 5 at every l < 50 (a2 = 0, a3 = 0, a7 = 2)",
        ok,
    );
}

#[test]
fn criterion_10_torsion_polynomial_bit_for_bit() {
    let exact = bundle().curve.torsion_field_polynomial().unwrap();
    let mut ok = exact == bundle().table5.coeffs;
    ok &= exact.coeff(0) == "615432262420654296875".parse::<BigInt>().unwrap();
    let (numeric, residual) = bundle()
        .curve
        .torsion_field_polynomial_numeric(300)
        .unwrap();
    ok &= numeric == exact && residual < 1e-8;
    criterion(
        10,
        "exact resultant construction reproduces the printed degree-24 polynomial bit for bit; numeric route rounds to the same polynomial",
        ok,
    );
}

#[test]
fn criterion_11_group_facts() {
    let facts = gl2::verify_group_facts();
    let ok = facts.all_verified
        && facts.borel_order == 80
        && facts.j_order == 20
        && facts.borel_mod_j_cyclic_of_order_4
        && facts.no_nontrivial_subgroup_of_j_normal
        && facts.order24_order5_pairs_generate;
    criterion(
        11,
        "|H| = 80, |J| = 20, H/J cyclic of order 4, no nontrivial subgroup of J normal, order-24 + order-5 pairs generate",
        ok,
    );
}

#[test]
fn pipeline_reports_all_pass() {
    // belt and braces: the orchestrated run agrees with the itemized criteria
    let r = report();
    assert!(r.passed(), "pipeline stages: {:?}",
        r.stages.iter().map(|s| (&s.name, s.status)).collect::<Vec<_>>());
    // spot values pinned from the eigenvalue formalism
    let spot = hecke::hecke_polynomial(2, F5(4), F5(1)).unwrap();
    assert_eq!(spot.0.map(|c| c.0), [1, 1, 2, 2]);
}
