//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its measured runtime. Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines.

use std::time::{Duration, Instant};

use oripath::batch::map_instances;
use oripath::certify_k1l::certify_middle_one;
use oripath::certify_klr::{bound, certify_three_blocks};
use oripath::digraph::{validate_coloring, validate_embedding, Digraph};
use oripath::forest::{final_spanning_outforest, is_final, level_coloring, level_sets, root_path};
use oripath::oracle::{
    chromatic_number, contains_pattern, gen_random, gen_transitive_tournament, OracleLimits,
};
use oripath::peel::{cross_edge_audit, peel};
use oripath::{BlockPattern, Certificate};

fn report(criterion: usize, what: &str, start: Instant, limit: Duration) {
    let elapsed = start.elapsed();
    println!(
        "criterion {criterion:2} PASS  ({:8.3}s / limit {:5.0}s)  {what}",
        elapsed.as_secs_f64(),
        limit.as_secs_f64()
    );
    assert!(
        elapsed < limit,
        "criterion {criterion} exceeded its time limit: {elapsed:?} >= {limit:?}"
    );
}

fn probabilities() -> [f64; 3] {
    [0.05, 0.2, 0.5]
}

#[test]
fn criterion_01_middle_one_soundness_sweep() {
    let start = Instant::now();
    let corpus: Vec<Digraph> = (0..500u64)
        .map(|i| {
            let n = 1 + (i as usize % 60);
            let p = probabilities()[i as usize % 3];
            gen_random(n, p, 0x0101_0000 + i)
        })
        .collect();
    for (k, l, cap) in [(2, 3, 10), (3, 3, 12), (2, 4, 12)] {
        let results = map_instances(&corpus, |d| {
            let cert = certify_middle_one(d, k, l)?;
            Ok::<_, oripath::Error>((cert.validate(d), cert))
        });
        for (i, res) in results.iter().enumerate() {
            let (valid, cert) = res.as_ref().unwrap_or_else(|e| panic!("instance {i}: {e}"));
            assert!(valid, "instance {i} pattern ({k},1,{l}): invalid certificate");
            if let Certificate::Colored { coloring, bound } = cert {
                assert_eq!(*bound, cap);
                assert!(coloring.num_colors <= cap, "instance {i}: {} > {cap}", coloring.num_colors);
            }
        }
    }
    report(1, "500 digraphs x 3 middle-one patterns, validated within 2n-4", start, Duration::from_secs(60));
}

#[test]
fn criterion_02_middle_one_threshold_witness() {
    let start = Instant::now();
    let d = gen_transitive_tournament(11);
    let cert = certify_middle_one(&d, 2, 3).unwrap();
    assert!(cert.validate(&d));
    assert!(cert.is_path(), "chi = 11 > 10 forces the path arm");
    let first = start.elapsed();
    assert!(first < Duration::from_secs(1), "TT_11 witness took {first:?}");

    let d = gen_transitive_tournament(13);
    let cert = certify_middle_one(&d, 2, 4).unwrap();
    assert!(cert.validate(&d));
    assert!(cert.is_path(), "chi = 13 > 12 forces the path arm");
    report(2, "transitive tournaments at the chromatic threshold yield embeddings", start, Duration::from_secs(2));
}

#[test]
fn criterion_03_middle_one_oracle_agreement() {
    let start = Instant::now();
    let limits = OracleLimits::default();
    let pattern = BlockPattern::new(2, 1, 3);
    let corpus: Vec<Digraph> = (0..200u64)
        .map(|i| {
            let n = 1 + (i as usize % 9);
            let p = probabilities()[i as usize % 3];
            gen_random(n, p, 0x0303_0000 + i)
        })
        .collect();
    let results = map_instances(&corpus, |d| {
        let cert = certify_middle_one(d, 2, 3).unwrap();
        let oracle = contains_pattern(d, pattern, limits).unwrap();
        (cert, oracle)
    });
    for (i, (cert, oracle)) in results.iter().enumerate() {
        assert!(cert.validate(&corpus[i]), "instance {i}");
        match (cert, oracle) {
            (Certificate::Path(_), None) => panic!("instance {i}: path in a pattern-free digraph"),
            (Certificate::Path(emb), Some(_)) => assert!(validate_embedding(&corpus[i], emb)),
            _ => {}
        }
    }
    report(3, "200 small digraphs: certifier and oracle never disagree", start, Duration::from_secs(120));
}

#[test]
fn criterion_04_three_block_bound_compliance() {
    let start = Instant::now();
    let corpus: Vec<Digraph> = (0..300u64)
        .map(|i| {
            let n = 1 + (i as usize % 50);
            let p = probabilities()[i as usize % 3];
            gen_random(n, p, 0x0404_0000 + i)
        })
        .collect();
    for (k, l, r, cap) in [(2, 2, 2, 14), (2, 3, 4, 23), (2, 4, 3, 24)] {
        assert_eq!(bound(k, l, r).unwrap(), cap);
        let results = map_instances(&corpus, |d| {
            let cert = certify_three_blocks(d, k, l, r)?;
            Ok::<_, oripath::Error>((cert.validate(d), cert))
        });
        for (i, res) in results.iter().enumerate() {
            let (valid, cert) = res.as_ref().unwrap_or_else(|e| panic!("instance {i}: {e}"));
            assert!(valid, "instance {i} pattern ({k},{l},{r})");
            if let Certificate::Colored { coloring, .. } = cert {
                assert!(coloring.num_colors <= cap, "instance {i}: {} > {cap}", coloring.num_colors);
            }
        }
    }
    report(4, "300 digraphs x three general patterns, colorings within case bounds", start, Duration::from_secs(60));
}

#[test]
fn criterion_05_three_block_threshold_witness() {
    let start = Instant::now();
    let d = gen_transitive_tournament(15);
    let cert = certify_three_blocks(&d, 2, 2, 2).unwrap();
    assert!(cert.validate(&d));
    assert!(cert.is_path(), "chi = 15 > 14 forces the path arm");
    report(5, "transitive tournament on 15 vertices yields a P(2,2,2) embedding", start, Duration::from_secs(5));
}

#[test]
fn criterion_06_final_forest_properties() {
    let start = Instant::now();
    let corpus: Vec<Digraph> = (0..1000u64)
        .map(|i| {
            let n = 1 + (i as usize % 80);
            let p = probabilities()[i as usize % 3];
            gen_random(n, p, 0x0606_0000 + i)
        })
        .collect();
    let failures: usize = map_instances(&corpus, |d| {
        let f = final_spanning_outforest(d);
        if !is_final(d, &f) {
            return 1usize;
        }
        for set in level_sets(&f) {
            for (i, &u) in set.iter().enumerate() {
                for &v in &set[i + 1..] {
                    if d.has_edge(u, v) {
                        return 1;
                    }
                }
            }
        }
        let c = match level_coloring(d, &f) {
            Ok(c) => c,
            Err(_) => return 1,
        };
        if !validate_coloring(d, &c) {
            return 1;
        }
        for v in 0..d.vertex_count() {
            let rp = root_path(&f, v);
            if rp.len() != f.level(v) || rp.windows(2).any(|w| !d.has_arc(w[0], w[1])) {
                return 1;
            }
        }
        0
    })
    .into_iter()
    .sum();
    assert_eq!(failures, 0);
    report(6, "1000 digraphs: finality, stable levels, proper level coloring, valid root paths", start, Duration::from_secs(60));
}

#[test]
fn criterion_07_depth_dominates_chromatic_number() {
    let start = Instant::now();
    let limits = OracleLimits::default();
    let corpus: Vec<Digraph> = (0..100u64)
        .map(|i| {
            let n = 1 + (i as usize % 12);
            let p = probabilities()[i as usize % 3];
            gen_random(n, p, 0x0707_0000 + i)
        })
        .collect();
    let failures: usize = map_instances(&corpus, |d| {
        let chi = chromatic_number(d, limits).unwrap();
        let f = final_spanning_outforest(d);
        if f.depth() < chi {
            return 1usize;
        }
        let deep = f.deepest_vertex().unwrap();
        let rp = root_path(&f, deep);
        if rp.len() < chi || rp.windows(2).any(|w| !d.has_arc(w[0], w[1])) {
            return 1;
        }
        0
    })
    .into_iter()
    .sum();
    assert_eq!(failures, 0);
    report(7, "100 digraphs: forest depth covers the exact chromatic number", start, Duration::from_secs(60));
}

#[test]
fn criterion_08_peel_invariants() {
    let start = Instant::now();
    let corpus: Vec<Digraph> = (0..200u64)
        .map(|i| {
            let n = 1 + (i as usize % 40);
            let p = probabilities()[i as usize % 3];
            gen_random(n, p, 0x0808_0000 + i)
        })
        .collect();
    for l in [2usize, 3, 5] {
        let failures: usize = map_instances(&corpus, |d| {
            let dec = peel(d, l);
            if !cross_edge_audit(d, &dec) {
                return 1usize;
            }
            if dec.layers.iter().any(|layer| layer.path.len() != l + 1) {
                return 1;
            }
            if dec.residual_forest.depth() > l {
                return 1;
            }
            0
        })
        .into_iter()
        .sum();
        assert_eq!(failures, 0, "peel length {l}");
    }
    report(8, "200 digraphs x lengths {2,3,5}: audits pass, exact layers, shallow residuals", start, Duration::from_secs(60));
}

#[test]
fn criterion_09_bound_function_identity() {
    let start = Instant::now();
    for k in 2..=10usize {
        for l in 2..=10usize {
            for r in 2..=10usize {
                let b = bound(k, l, r).unwrap();
                assert_eq!(b, bound(r, l, k).unwrap());
                let total = k + l + r;
                let (kk, rr) = (k.min(r), k.max(r));
                if l == kk {
                    assert_eq!(2 * total + rr, 2 * total + l + rr - kk);
                }
                if l == rr {
                    assert_eq!(2 * total + l + rr - kk, 2 * (total + l) - kk);
                }
            }
        }
    }
    report(9, "overlapping case formulas agree at ties and under k/r swap", start, Duration::from_secs(1));
}

#[test]
fn criterion_10_reversal_duality() {
    let start = Instant::now();
    let corpus: Vec<Digraph> = (0..100u64)
        .map(|i| {
            let n = 5 + (i as usize % 26);
            let p = probabilities()[i as usize % 3];
            gen_random(n, p, 0x1010_0000 + i)
        })
        .collect();
    let failures: usize = map_instances(&corpus, |d| {
        let rev = d.reverse();
        for (k1, k2, k3) in [(2, 1, 3), (3, 1, 3), (2, 2, 2), (2, 3, 4)] {
            let fwd = if k2 == 1 {
                certify_middle_one(d, k1, k3).unwrap()
            } else {
                certify_three_blocks(d, k1, k2, k3).unwrap()
            };
            let bwd = if k2 == 1 {
                certify_middle_one(&rev, k3, k1).unwrap()
            } else {
                certify_three_blocks(&rev, k3, k2, k1).unwrap()
            };
            if fwd.is_path() != bwd.is_path() {
                return 1usize;
            }
            if let (Certificate::Path(e1), Certificate::Path(e2)) = (&fwd, &bwd) {
                if !validate_embedding(&rev, &e1.reversed()) || !validate_embedding(d, &e2.reversed()) {
                    return 1;
                }
            }
        }
        0
    })
    .into_iter()
    .sum();
    assert_eq!(failures, 0);
    report(10, "100 digraphs: reversed pattern on reversed digraph gives the same arm", start, Duration::from_secs(120));
}
