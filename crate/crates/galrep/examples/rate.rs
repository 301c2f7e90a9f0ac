fn main() {
    let target = (num_bigint::BigInt::from(5).pow(5) * num_bigint::BigInt::from(163).pow(4)).to_string();
    let spec: galrep::hunter::SearchSpec = serde_json::from_str(&format!(
        r#"{{"degree":5,"target":"{target}","congruence_primes":[5,163],
            "residues":[[5,1],[163,0]],"allowed_traces":[0]}}"#
    ))
    .unwrap();
    let t0 = std::time::Instant::now();
    let r = galrep::hunter::enumerate_search(
        &spec,
        Some(galrep::hunter::Partition { index: 16, of: 33 }),
    )
    .unwrap();
    let dt = t0.elapsed().as_secs_f64();
    println!(
        "one task: enumerated {} in {:.1}s -> {:.0}/s/core-ish; stats {:?}; found {}",
        r.stats.enumerated,
        dt,
        r.stats.enumerated as f64 / dt,
        r.stats,
        r.candidates.len()
    );
}
