use std::collections::HashSet;

use qcore::congruence::{
    expand_family, expand_suite, mine, run_suite, verify_claim, verify_claims, ClaimSubject, CongruenceClaim,
    FamilyParams, MineParams, MineSource, SuiteOptions,
};
use qcore::report::{ProofStatus, Status};

fn proved() -> Vec<CongruenceClaim> {
    expand_suite("paper-proved", &FamilyParams::default()).unwrap()
}

/// `strong` implies `weak`: same subject, a coarser progression covering
/// every residue of `weak`, and a modulus that `weak`'s modulus divides.
fn implies(strong: &CongruenceClaim, weak: &CongruenceClaim) -> bool {
    strong.subject == weak.subject
        && weak.period.is_multiple_of(strong.period)
        && weak.residues.iter().all(|r| strong.residues.contains(&(r % strong.period)))
        && strong.modulus().is_multiple_of(weak.modulus())
}

// Shifting every residue of a proved claim by one must break it quickly,
// unless the shifted claim is itself a known theorem instance. The residue
// sets of the two triangular criteria sit next to each other, so about 15%
// of shifts land on another true congruence.
#[test]
fn shifted_residues_break_within_five_indices() {
    let claims = proved();
    let wide = FamilyParams { i: Some(1..=10), ..FamilyParams::default() };
    let mut known = claims.clone();
    for id in ["thm-1.2", "thm-1.3", "thm-1.4"] {
        known.extend(expand_family(id, &wide).unwrap());
    }
    let perturbed: Vec<CongruenceClaim> = claims
        .iter()
        .map(|c| {
            let rs = c.residues.iter().map(|r| (r + 1) % c.period).collect();
            CongruenceClaim::new(c.subject, c.period, rs, c.prime, c.power).unwrap()
        })
        .collect();
    let reports = verify_claims(&perturbed, 3000, None).unwrap();
    let mut caught = 0;
    for (c, r) in perturbed.iter().zip(&reports) {
        if r.status == Status::Counterexample && r.checked <= 5 {
            caught += 1;
        } else {
            assert_eq!(r.status, Status::Verified, "{}", c.id());
            assert!(known.iter().any(|k| implies(k, c)), "{} holds but is not a known instance", c.id());
        }
    }
    let share = caught as f64 / reports.len() as f64;
    println!("{caught} of {} shifted claims fail within five indices ({share:.3})", reports.len());
    assert!(share >= 0.8, "{share}");
}

#[test]
fn triangular_zero_instance_matches_pair_ladder() {
    let p = FamilyParams {
        primes: Some(vec![5]),
        i: Some(1..=1),
        ..FamilyParams::default()
    };
    let a = expand_family("thm-1.4", &p).unwrap();
    let d = expand_family("eq-d", &FamilyParams { alpha: Some(1..=1), ..FamilyParams::default() }).unwrap();
    assert_eq!(a.len(), 1);
    assert_eq!(a[0].key(), d[0].key());
    assert_eq!(a[0].id(), "A(5,2; 5n+3) % 5 == 0");
    for c in [&a[0], &d[0]] {
        assert_eq!(verify_claim(c, 1000).unwrap().status, Status::Verified);
    }
}

#[test]
fn true_proved_claims_in_the_small_box_are_mined() {
    let order = 2000;
    let in_box = |c: &CongruenceClaim| {
        matches!(c.subject, ClaimSubject::TupleCount { t: 5, k } if k <= 7)
            && c.period <= 25
            && c.modulus() <= 125
    };
    let targets: Vec<CongruenceClaim> = proved().into_iter().filter(in_box).collect();
    assert!(targets.len() >= 10);
    let found = mine(&MineParams {
        source: MineSource::TupleCores { t: 5, ks: (1..=7).collect() },
        periods: vec![5, 25],
        moduli: vec![5, 25, 125],
        order,
        min_hits: 40,
    })
    .unwrap();
    let mined: HashSet<_> = found.iter().map(|m| m.claim.key()).collect();
    for c in &targets {
        let holds = verify_claim(c, order).unwrap().status == Status::Verified;
        for &r in &c.residues {
            let single = CongruenceClaim::new(c.subject, c.period, vec![r], c.prime, c.power).unwrap();
            // a claim that is false at this order cannot be mined; only the
            // misprinted A(5,3) ladder is expected here
            if holds {
                assert!(mined.contains(&single.key()), "{} not mined", single.id());
            } else {
                assert_eq!(c.source, "eq-f", "{}", c.id());
                assert!(!mined.contains(&single.key()));
            }
        }
    }
    assert!(found.iter().all(|m| m.claim.status == ProofStatus::Mined && m.claim.source == "mined"));
}

#[test]
fn suite_reports_are_byte_identical() {
    let opts = SuiteOptions { seed: 11, ..SuiteOptions::default() };
    let a = run_suite("paper-conjectures", 1200, &opts).unwrap().to_json();
    let b = run_suite("paper-conjectures", 1200, &opts).unwrap().to_json();
    assert_eq!(a, b);
    let jobs = SuiteOptions { jobs: Some(1), ..opts };
    assert_eq!(run_suite("paper-conjectures", 1200, &jobs).unwrap().to_json(), a);
}

#[test]
fn conjectures_stay_flagged() {
    let r = run_suite("paper-conjectures", 1500, &SuiteOptions::default()).unwrap();
    assert!(!r.results.is_empty());
    for x in &r.results {
        assert_eq!(x.proof_status, ProofStatus::Conjecture, "{}", x.id);
        assert_eq!(x.status, Status::Verified, "{}", x.id);
    }
}

#[test]
fn low_order_skips_with_reason() {
    let r = run_suite("thm-1.5", 100, &SuiteOptions::default()).unwrap();
    let skipped: Vec<_> = r.results.iter().filter(|x| x.status == Status::Skipped).collect();
    assert_eq!(skipped.len(), 3);
    assert!(skipped.iter().all(|x| x.id.contains("125n") && x.reason.is_some()));
}
