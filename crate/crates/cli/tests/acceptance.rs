//! Acceptance gate: one test per criterion, each printing a pass/fail line.
//!
//! Criteria that compare scan output with quoted exception lists are
//! asserted verbatim. Where the exact arithmetic finds violations missing
//! from a quoted list, the corresponding test fails honestly and its
//! message shows the full diff; see notes in the repository README.

use std::time::Instant;

use classcount::boundscan::{
    bundled_weyl_data, literature, prime_powers_up_to, scan_bc, scan_d_family,
    scan_defining_char, scan_three_d4, scan_two_f4, scan_type_a, sum_of_two_divisors,
    weyl_inequality, DefCharFamily, ScanWindow,
};
use classcount::grouplib::class_report;
use classcount::matgroups::{exceptional_11, find_regular_subgroups, frobenius_metacyclic};
use classcount::nearfield::{
    admissible_params, clifford_class_count, closed_form_lb, nearfield_group,
    sharply_2transitive_group,
};
use classcount::numtheory::primes_up_to;
use classcount_cli::report::Status;
use num_traits::ToPrimitive;

fn status_line(criterion: &str, pass: bool, detail: &str) -> bool {
    println!(
        "criterion {criterion}: {} - {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    pass
}

#[test]
fn c1_formula_oracle_equivalence() {
    let t0 = Instant::now();
    let params = admissible_params(20000);
    let twisted = params.iter().filter(|pr| pr.n > 1).count();
    let mut bad = Vec::new();
    for pr in &params {
        let brute = nearfield_group(pr).unwrap().conjugacy_classes().len() as u64;
        let cliff = clifford_class_count(pr).unwrap().to_u64().unwrap();
        let closed = closed_form_lb(pr).unwrap().to_u64().unwrap();
        if brute != cliff || brute != closed {
            bad.push((pr.p, pr.k, pr.n, brute, cliff, closed));
        }
    }
    let elapsed = t0.elapsed();
    let pass = bad.is_empty() && twisted >= 40 && elapsed.as_secs() < 60;
    assert!(
        status_line(
            "1",
            pass,
            &format!(
                "{} cases ({} with n >= 2), mismatches {:?}, {elapsed:?}",
                params.len(),
                twisted,
                bad
            )
        ),
        "formula/oracle mismatch {bad:?} or window too small ({twisted} twisted cases) or over 60s ({elapsed:?})"
    );
}

#[test]
fn c2_exceptional_table_rediscovery() {
    let t0 = Instant::now();
    let mut all_ok = true;
    let mut detail = String::new();
    for (p, want) in [
        (5u64, vec![7u64, 12, 24]),
        (7, vec![8, 21, 48]),
        (11, vec![9, 35, 45, 120]),
    ] {
        let records = find_regular_subgroups(p).unwrap();
        let mut got: Vec<u64> = records.iter().map(|r| r.class_count).collect();
        got.sort_unstable();
        detail.push_str(&format!("p={p}: {got:?}; "));
        all_ok &= got == want;
    }
    let elapsed = t0.elapsed();
    let pass = all_ok && elapsed.as_secs() < 300;
    assert!(
        status_line("2", pass, &format!("{detail}{elapsed:?}")),
        "class-count sets {detail} (limit 5 min, took {elapsed:?})"
    );
}

#[test]
fn c3_exceptional_11_instance() {
    let t0 = Instant::now();
    let g = exceptional_11().unwrap();
    let r = class_report(&g, 11);
    let elapsed = t0.elapsed();
    let pass = r.order == 14520
        && (r.k, r.k_p, r.k_p_prime) == (10, 2, 9)
        && elapsed.as_secs() < 120;
    assert!(
        status_line(
            "3",
            pass,
            &format!(
                "order={} (k,k_11,k_11')=({},{},{}), {elapsed:?}",
                r.order, r.k, r.k_p, r.k_p_prime
            )
        ),
        "got order={} (k,k_p,k_p')=({},{},{}) in {elapsed:?}",
        r.order,
        r.k,
        r.k_p,
        r.k_p_prime
    );
}

#[test]
fn c4_frobenius_equality_cases() {
    let t0 = Instant::now();
    let mut bad = Vec::new();
    for p in primes_up_to(199) {
        let full = class_report(&frobenius_metacyclic(p, p - 1).unwrap(), p);
        if full.k_p_prime != p - 1 {
            bad.push(("full", p, full.k_p_prime));
        }
        if p > 2 {
            let half = class_report(&frobenius_metacyclic(p, (p - 1) / 2).unwrap(), p);
            if half.k_p_prime != (p - 1) / 2 {
                bad.push(("half", p, half.k_p_prime));
            }
        }
    }
    let elapsed = t0.elapsed();
    let pass = bad.is_empty() && elapsed.as_secs() < 30;
    assert!(
        status_line("4", pass, &format!("all p <= 199, mismatches {bad:?}, {elapsed:?}")),
        "mismatches {bad:?} (limit 30s, took {elapsed:?})"
    );
}

#[test]
fn c5_sharply_2transitive_consistency() {
    let mut bad = Vec::new();
    for pr in admissible_params(999) {
        let g = sharply_2transitive_group(&pr, 1 << 18, 2_000_000).unwrap();
        let r = class_report(&g, pr.p);
        let closed = closed_form_lb(&pr).unwrap().to_u64().unwrap();
        if r.k != closed + 1 || r.k_p != 2 {
            bad.push((pr.p, pr.k, pr.n, r.k, closed + 1, r.k_p));
        }
    }
    let pass = bad.is_empty();
    assert!(
        status_line("5", pass, &format!("all q^n <= 1000, mismatches {bad:?}")),
        "mismatches {bad:?}"
    );
}

#[test]
fn c6_identity_suite() {
    use classcount::nearfield::{dickson_condition, order_identity_holds, DicksonParams};
    use classcount::numtheory::{
        big_pow, cyclotomic_value, divisors, jordan_totient2,
    };
    use num_bigint::BigUint;
    use num_traits::One;

    let mut ok = true;
    for n in 1..=10_000u64 {
        let s: u64 = divisors(n).iter().map(|&d| jordan_totient2(d)).sum();
        ok &= s == n * n;
    }
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11] {
        for n in 1..=60u64 {
            let mut prod = BigUint::one();
            for d in divisors(n) {
                prod *= cyclotomic_value(d, q);
            }
            ok &= prod == big_pow(q, n) - BigUint::one();
        }
    }
    let mut admissible = 0;
    for p in primes_up_to(100) {
        for k in 1..=7u64 {
            if p.checked_pow(k as u32).map_or(true, |q| q > 100) {
                break;
            }
            for n in 1..=12u64 {
                if dickson_condition(p, k, n) {
                    admissible += 1;
                    ok &= order_identity_holds(&DicksonParams { p, k, n });
                }
            }
        }
    }
    assert!(
        status_line("6", ok, &format!("identities hold; {admissible} admissible order checks")),
        "an identity failed"
    );
}

#[test]
fn c7_bc_scan() {
    let t0 = Instant::now();
    let scan = scan_bc(&ScanWindow::default());
    let got: Vec<(u32, u64, u64)> = scan.exceptions.iter().map(|c| (c.n, c.p, c.q)).collect();
    let want = literature::BC_EXCEPTIONS.to_vec();
    let flagged: Vec<(u64, u64)> = scan.flagged.iter().map(|c| (c.q, c.p)).collect();
    let elapsed = t0.elapsed();
    let pass = got == want && flagged.contains(&(4, 5)) && elapsed.as_secs() < 60;
    assert!(
        status_line(
            "7.bc",
            pass,
            &format!("exceptions {got:?}, flagged {flagged:?}, {elapsed:?}")
        ),
        "expected {want:?}, got {got:?}, flagged {flagged:?}"
    );
}

#[test]
fn c7_three_d4_scan() {
    let t0 = Instant::now();
    let got: Vec<(u64, u64)> = scan_three_d4(&ScanWindow::default())
        .iter()
        .map(|c| (c.q, c.p))
        .collect();
    let want = literature::THREE_D4_EXCEPTIONS.to_vec();
    let elapsed = t0.elapsed();
    let pass = got == want && elapsed.as_secs() < 60;
    assert!(
        status_line("7.3d4", pass, &format!("computed {got:?}, {elapsed:?}")),
        "quoted list {want:?} but the inequality 1+(q^4-q^2)/4 >= 3fp also fails at the extra cases in {got:?}"
    );
}

#[test]
fn c7_two_f4_scan() {
    let t0 = Instant::now();
    let got: Vec<(u64, u32)> = scan_two_f4(1 << 13, 500)
        .iter()
        .map(|c| (c.p, c.n))
        .collect();
    let want = literature::TWO_F4_EXCEPTIONS.to_vec();
    let elapsed = t0.elapsed();
    let pass = got == want && elapsed.as_secs() < 60;
    assert!(
        status_line("7.2f4", pass, &format!("computed {got:?}, {elapsed:?}")),
        "quoted list {want:?} but the inequality 1+(q^2+q)/6 >= (2m+1)p also fails at the extra cases in {got:?}"
    );
}

#[test]
fn c7_d_h_branch_scan() {
    let t0 = Instant::now();
    let d = scan_d_family(&ScanWindow::default());
    let mut got: Vec<(u32, String, u64, u64)> = d
        .h_branch
        .iter()
        .map(|c| (c.n, c.eps.unwrap().label().to_string(), c.q, c.p))
        .collect();
    got.sort();
    let mut want: Vec<(u32, String, u64, u64)> = literature::D_H_NAMED
        .iter()
        .map(|&(n, eps, q, p)| (n, eps.label().to_string(), q, p))
        .collect();
    for pp in prime_powers_up_to(29) {
        for p in primes_up_to(500) {
            if p >= 5 && (pp.q * pp.q + 1) % p == 0 && (pp.q * pp.q - 1) % p != 0 {
                want.push((4, "+".to_string(), pp.q, p));
            }
        }
    }
    want.sort();
    want.dedup();
    let elapsed = t0.elapsed();
    let missing: Vec<_> = want.iter().filter(|c| !got.contains(c)).collect();
    let extra: Vec<_> = got.iter().filter(|c| !want.contains(c)).collect();
    let pass = got == want && elapsed.as_secs() < 60;
    assert!(
        status_line(
            "7.d_h",
            pass,
            &format!("computed {} cases, {elapsed:?}", got.len())
        ),
        "h-branch set mismatch: cases in the quoted-condition set that hold: {missing:?}; violations beyond it: {extra:?}"
    );
}

#[test]
fn c7_type_a_scan() {
    let t0 = Instant::now();
    let got: Vec<(String, u32, u64, u64)> = scan_type_a(&ScanWindow::default())
        .iter()
        .map(|c| (c.family.clone(), c.n, c.q, c.p))
        .collect();
    let elapsed = t0.elapsed();
    let pass = got.is_empty() && elapsed.as_secs() < 60;
    assert!(
        status_line("7.a", pass, &format!("computed {got:?}, {elapsed:?}")),
        "quoted claim is an empty list, but the torus-pair bound fails at {got:?}"
    );
}

#[test]
fn c7_defining_char_scan() {
    let t0 = Instant::now();
    let mut got: Vec<(&str, u64, u64)> = Vec::new();
    for (fam, q_max) in [
        (DefCharFamily::A1, 9_765_625),
        (DefCharFamily::A2, 169),
        (DefCharFamily::TwoA2, 121),
    ] {
        for c in scan_defining_char(fam, q_max) {
            got.push((c.family, c.q, c.p));
        }
    }
    got.sort_unstable();
    let mut want = literature::DEFINING_CHAR_EXCEPTIONS.to_vec();
    want.sort_unstable();
    let elapsed = t0.elapsed();
    let pass = got == want && elapsed.as_secs() < 60;
    assert!(
        status_line("7.defchar", pass, &format!("computed {got:?}, {elapsed:?}")),
        "quoted list {want:?} but q^r >= p|Z||Out| also fails at the extra cases in {got:?}"
    );
}

#[test]
fn c8_e7_arithmetic() {
    let no_sum = !sum_of_two_divisors(1368, 768);
    let torus = bundled_weyl_data()
        .into_iter()
        .find(|d| d.key == "e7.d4.torus")
        .unwrap();
    let mut nondiv = true;
    for p in [17u64, 19, 23] {
        let cert = weyl_inequality(&torus, 1, p);
        nondiv &= !cert.link("p_pow_m_minus_1_divides_w").unwrap();
    }
    let pass = no_sum && nondiv;
    assert!(
        status_line(
            "8",
            pass,
            &format!("1368 not a divisor sum of 768: {no_sum}; p^2-1 never divides 768: {nondiv}")
        ),
        "divisor arithmetic failed"
    );
}

#[test]
fn c9_determinism_across_workers() {
    let weyl = bundled_weyl_data();
    let one = classcount_cli::verify_all_report(1, false, false, weyl.clone());
    let eight = classcount_cli::verify_all_report(8, false, false, weyl);
    let j1 = one.to_json();
    let j8 = eight.to_json();
    let pass = j1 == j8;
    assert!(
        status_line(
            "9",
            pass,
            &format!(
                "workers 1 vs 8: {} bytes vs {} bytes, {}",
                j1.len(),
                j8.len(),
                if pass { "identical" } else { "DIFFER" }
            )
        ),
        "verify-all JSON differs between worker counts"
    );
    // the suite verdict itself is stable: overall status reflects the
    // documented quoted-list discrepancies and nothing else
    assert_eq!(one.overall, eight.overall);
    assert_eq!(one.overall, Status::Fail);
    let failing: Vec<&str> = one
        .checks
        .iter()
        .filter(|c| !c.passed())
        .map(|c| c.id.as_str())
        .collect();
    assert_eq!(
        failing,
        vec![
            "c7.scan.d_h_branch",
            "c7.scan.defining_char",
            "c7.scan.three_d4",
            "c7.scan.two_f4",
            "c7.scan.type_a",
        ],
        "the only failing checks are the documented quoted-list discrepancies"
    );
}
