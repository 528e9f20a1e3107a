//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test -p bgkit-core --test acceptance`.

mod support;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use bgkit_core::automorphisms::{
    apply_aut, classify, classify_endo, classify_endo_traced, compose_images, inverse_images,
    std_aut, verify_hom,
};
use bgkit_core::britton::{britton_reduce, cyclic_reduce_g, g_equal, g_is_identity};
use bgkit_core::conjugacy::{conj_zero_closed_form, conj_zero_g, verify_chain, ChainSearch};
use bgkit_core::h_arith::{eval_h, h_is_identity, h_mul};
use bgkit_core::{
    AffineElem, AutImages, Budget, Classification, Dyadic, Error, GWord, Generator, HomCheck, Sign,
    Word,
};
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use support::*;

type Outcome = Result<String, String>;

/// Name, time limit in seconds, check.
type Criterion = (&'static str, u64, fn() -> Outcome);

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err_str(e: Error) -> String {
    e.to_string()
}

fn random_dyadic(r: &mut ChaCha8Rng, max_num: i64, max_den: u64) -> Dyadic {
    Dyadic::new(r.gen_range(-max_num..=max_num), r.gen_range(0..=max_den))
}

fn generators() -> [Generator; 3] {
    [Generator::X, Generator::Y, Generator::T]
}

/// Images of `s -> F(s)` agree in `G` with those of `std_aut(d)` after conjugating by `c`.
fn normalizes_to(f: &AutImages, c: &Word, d: &Dyadic, b: &Budget) -> Result<bool, Error> {
    let normalized = f.conjugated_by(c);
    let std = std_aut(d);
    for g in generators() {
        if !g_equal(normalized.image(g), std.image(g), b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn c1_relation_fidelity() -> Outcome {
    let b = Budget::default();
    let lhs = eval_h(&w("y^-1 x y")).map_err(err_str)?;
    let rhs = eval_h(&w("x^2")).map_err(err_str)?;
    ensure(lhs == rhs, || {
        format!("eval_h: y^-1 x y = {lhs}, x^2 = {rhs}")
    })?;
    let (x, y) = (AffineElem::x_pow(1), AffineElem::y_pow(1));
    ensure(
        h_mul(&h_mul(&y.inv(), &x), &y) == AffineElem::x_pow(2),
        || "h_mul relation".into(),
    )?;
    ensure(h_is_identity(&w("y^-1 x y x^-2")).map_err(err_str)?, || {
        "h_is_identity relator".into()
    })?;
    for rel in relators() {
        ensure(g_is_identity(&rel, &b).map_err(err_str)?, || {
            format!("relator {rel} not identity")
        })?;
        ensure(g_identity_oracle(&rel) == Some(true), || {
            format!("oracle disagrees on {rel}")
        })?;
    }
    ensure(
        !g_is_identity(&w("y^-1 x y x^-1"), &b).map_err(err_str)?,
        || "x^y = x".into(),
    )?;
    ensure(
        !g_is_identity(&w("t^-1 x t x^-1"), &b).map_err(err_str)?,
        || "x^t = x".into(),
    )?;
    Ok("both relators exact".into())
}

/// Every alternating x/y syllable sequence with exponents in ±1..±4 and at
/// most 8 syllables, checked against the rewriting oracle.
fn c2_h_word_problem() -> Outcome {
    const EXPS: [i128; 8] = [-4, -3, -2, -1, 1, 2, 3, 4];
    let mut checked = 0u64;
    let mut identities = 0u64;
    let mut buf: Vec<Syl> = Vec::with_capacity(8);

    fn rec(
        buf: &mut Vec<Syl>,
        max: usize,
        checked: &mut u64,
        identities: &mut u64,
    ) -> Result<(), String> {
        let word = from_syls(buf);
        let got = h_is_identity(&word).map_err(err_str)?;
        let want = h_identity_oracle(buf).ok_or("oracle overflow")?;
        if got != want {
            return Err(format!(
                "disagreement on {word}: library {got}, oracle {want}"
            ));
        }
        *checked += 1;
        *identities += u64::from(got);
        if buf.len() == max {
            return Ok(());
        }
        let gens: &[Generator] = match buf.last() {
            None => &[Generator::X, Generator::Y],
            Some((Generator::X, _)) => &[Generator::Y],
            Some(_) => &[Generator::X],
        };
        for &g in gens {
            for e in EXPS {
                buf.push((g, e));
                rec(buf, max, checked, identities)?;
                buf.pop();
            }
        }
        Ok(())
    }

    rec(&mut buf, 8, &mut checked, &mut identities)?;
    Ok(format!("{checked} words agree ({identities} identities)"))
}

fn random_head(r: &mut ChaCha8Rng) -> AffineElem {
    AffineElem::new(random_dyadic(r, 20, 4), r.gen_range(-4..=4))
}

fn c3_britton() -> Outcome {
    let b = Budget::default();
    let mut r = rng(3);
    let mut oracle_checked = 0;
    for i in 0..1000 {
        let word = relator_product(&mut r, 8, 4);
        let g = britton_reduce(&word, &b).map_err(err_str)?;
        ensure(g.is_identity(), || {
            format!("relator product #{i} reduced to {g}: {word}")
        })?;
    }
    let mut made = 0;
    while made < 1000 {
        let len = r.gen_range(1..=5);
        let tail: Vec<(Sign, AffineElem)> = (0..len)
            .map(|_| {
                (
                    if r.gen_bool(0.5) {
                        Sign::Plus
                    } else {
                        Sign::Minus
                    },
                    random_head(&mut r),
                )
            })
            .collect();
        let Some(g) = GWord::from_parts(random_head(&mut r), tail) else {
            continue;
        };
        made += 1;
        let expanded = g.to_word();
        ensure(!g_is_identity(&expanded, &b).map_err(err_str)?, || {
            format!("{expanded} reduces to 1")
        })?;
        let reduced = britton_reduce(&expanded, &b).map_err(err_str)?;
        ensure(reduced.t_length() == g.t_length(), || {
            format!("t-length changed for {expanded}")
        })?;
        if let Some(id) = g_identity_oracle(&expanded) {
            ensure(!id, || format!("oracle says {expanded} is 1"))?;
            oracle_checked += 1;
        }
    }
    Ok(format!("1000 relator products reduce to 1; 1000 reduced words non-identity ({oracle_checked} also by oracle)"))
}

fn classify_out(f: &AutImages, b: &Budget) -> Result<(Dyadic, Word), String> {
    match classify_endo(f, b).map_err(err_str)? {
        Classification::Aut { out, conjugator } => Ok((out.0, conjugator)),
        other => Err(format!("expected aut, got {}", other.kind())),
    }
}

fn c4_out_addition() -> Outcome {
    let b = Budget::default();
    let mut r = rng(4);
    for _ in 0..200 {
        let d1 = random_dyadic(&mut r, 1 << 16, 16);
        let d2 = random_dyadic(&mut r, 1 << 16, 16);
        for d in [&d1, &d2] {
            let (out, _) = classify_out(&std_aut(d), &b)?;
            ensure(&out == d, || format!("std_aut({d}) classified as {out}"))?;
        }
        let f = compose_images(&std_aut(&d1), &std_aut(&d2), &b).map_err(err_str)?;
        let (out, c) = classify_out(&f, &b)?;
        let sum = &d1 + &d2;
        ensure(out == sum, || format!("{d1} + {d2}: classified as {out}"))?;
        ensure(normalizes_to(&f, &c, &sum, &b).map_err(err_str)?, || {
            format!("conjugator for {d1} + {d2}")
        })?;
    }
    Ok("200 pairs: classes add exactly".into())
}

fn c5_twisted_recovery() -> Outcome {
    let b = Budget::default();
    let mut r = rng(5);
    let (mut done, mut skipped, mut n_zero) = (0, 0, 0);
    while done < 100 {
        let d = random_dyadic(&mut r, 1 << 8, 8);
        let c = random_word(&mut r, &XYT, 6, 4);
        let f = std_aut(&d).conjugated_by(&c);
        match classify_endo_traced(&f, &b) {
            Err(Error::BudgetExceeded { .. }) => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(format!("d = {d}, c = {c}: {e}")),
            Ok((Classification::Aut { out, conjugator }, trace)) => {
                if trace.is_some_and(|t| t.y_image_n.is_zero()) {
                    n_zero += 1;
                }
                ensure(out.0 == d, || format!("d = {d}, c = {c}: recovered {out}"))?;
                ensure(
                    normalizes_to(&f, &conjugator, &d, &b).map_err(err_str)?,
                    || format!("d = {d}, c = {c}: conjugator {conjugator} does not normalize"),
                )?;
            }
            Ok((other, _)) => return Err(format!("d = {d}, c = {c}: {}", other.kind())),
        }
        done += 1;
    }
    Ok(format!(
        "100 twisted automorphisms recovered ({skipped} skipped over budget; \
         {n_zero} had F(y) = y x^j before normalization, i.e. n = 0)"
    ))
}

/// Endomorphisms built from standard automorphisms by conjugation and
/// composition, plus random perturbations of them that are kept only if
/// they still satisfy the relations.
fn hopfian_family(r: &mut ChaCha8Rng, b: &Budget) -> Result<Vec<AutImages>, Error> {
    let mut family = Vec::new();
    for _ in 0..40 {
        let d = random_dyadic(r, 64, 6);
        family.push(std_aut(&d).conjugated_by(&random_word(r, &XYT, 4, 3)));
    }
    for i in 0..20 {
        family.push(compose_images(&family[i], &family[i + 20], b)?);
    }
    for _ in 0..200 {
        let base = family[r.gen_range(0..40)].clone();
        let tweak = random_word(r, &XYT, 2, 2);
        let candidate = match r.gen_range(0..3) {
            0 => AutImages {
                t: base.t.concat(&tweak),
                ..base
            },
            1 => AutImages {
                y: base.y.concat(&tweak),
                ..base
            },
            _ => AutImages {
                x: tweak.concat(&base.x),
                ..base
            },
        };
        if verify_hom(&candidate, b)? == HomCheck::Hom {
            family.push(candidate);
        }
    }
    Ok(family)
}

fn c6_hopfian() -> Outcome {
    let b = Budget::default();
    let mut r = rng(6);
    let family = hopfian_family(&mut r, &b).map_err(err_str)?;
    let mut auts = 0;
    for f in &family {
        ensure(verify_hom(f, &b).map_err(err_str)? == HomCheck::Hom, || {
            "family member not hom".into()
        })?;
        if g_is_identity(&f.x, &b).map_err(err_str)? {
            continue;
        }
        let Classification::Aut { out, conjugator } = classify_endo(f, &b).map_err(err_str)? else {
            return Err(format!("F(x) != 1 but not classified as aut: {f:?}"));
        };
        auts += 1;
        let finv = inverse_images(&out, &conjugator, &b).map_err(err_str)?;
        for g in generators() {
            let s = Word::gen(g, 1);
            let back = apply_aut(&finv, f.image(g), &b).map_err(err_str)?;
            ensure(g_equal(&back.to_word(), &s, &b).map_err(err_str)?, || {
                format!("F^-1 F({s}) != {s}")
            })?;
            let fwd = apply_aut(f, finv.image(g), &b).map_err(err_str)?;
            ensure(g_equal(&fwd.to_word(), &s, &b).map_err(err_str)?, || {
                format!("F F^-1({s}) != {s}")
            })?;
        }
    }
    let identity_words: Vec<Word> = (0..100).map(|_| relator_product(&mut r, 4, 3)).collect();
    for (k, f) in family.iter().enumerate() {
        for (i, word) in identity_words.iter().enumerate() {
            let image = apply_aut(f, word, &b).map_err(err_str)?;
            ensure(image.is_identity(), || {
                format!("member {k} maps identity word #{i} to {image}")
            })?;
        }
    }
    Ok(format!(
        "{} endomorphisms, {auts} with F(x) != 1 all aut and inverted; each preserves 100 identity words",
        family.len()
    ))
}

fn check_pair(u: &Word, v: &Word, b: &Budget, positives: &mut usize) -> Result<(), String> {
    let closed = conj_zero_closed_form(u, v, b).map_err(err_str)?;
    let search = conj_zero_g(u, v, b, 64).map_err(err_str)?;
    match &search {
        ChainSearch::Found(cert) => {
            ensure(closed, || {
                format!("{u} ~ {v}: search found a chain, closed form says no")
            })?;
            ensure(verify_chain(u, v, cert, b).map_err(err_str)?, || {
                format!("certificate for {u} ~ {v} fails")
            })?;
            *positives += 1;
        }
        ChainSearch::NoChain { depth_capped } => {
            ensure(!closed, || {
                format!("{u} ~ {v}: closed form yes, search none (capped {depth_capped})")
            })?;
        }
    }
    Ok(())
}

fn c7_conjugacy() -> Outcome {
    let b = Budget::default();
    let mut powers = Vec::new();
    for k in (-64i64..=64).filter(|&k| k != 0) {
        powers.push(Word::x(k));
        powers.push(Word::y(k));
    }
    let mut positives = 0;
    let mut pairs = 0;
    for u in &powers {
        for v in &powers {
            check_pair(u, v, &b, &mut positives)?;
            pairs += 1;
        }
    }
    let mut r = rng(7);
    let mut words: Vec<Word> = (0..200).map(|_| random_t_zero_word(&mut r, 4, 4)).collect();
    for i in 0..200 {
        let c = random_word(&mut r, &XY, 3, 3);
        let mut conj = words[i].conjugate_by(&c);
        if r.gen_bool(0.3) {
            let with_t = conj.conjugate_by(&Word::t(if r.gen_bool(0.5) { 1 } else { -1 }));
            if britton_reduce(&with_t, &b).map_err(err_str)?.t_length() == 0 {
                conj = with_t;
            }
        }
        words.push(conj);
    }
    for i in 0..200 {
        for j in [i, (i + 1) % 200, (i * 7 + 3) % 200] {
            check_pair(&words[i], &words[200 + j], &b, &mut positives)?;
            check_pair(&words[200 + j], &words[i], &b, &mut positives)?;
            pairs += 2;
        }
    }
    Ok(format!(
        "{pairs} pairs agree, {positives} certificates verified"
    ))
}

fn c8_t_length_invariance() -> Outcome {
    let b = Budget::default();
    let mut r = rng(8);
    let (mut done, mut skipped) = (0, 0);
    while done < 100 {
        let word = random_word(&mut r, &XYT, 8, 4);
        let c = random_word(&mut r, &XYT, 6, 4);
        let cores = cyclic_reduce_g(&word, &b)
            .and_then(|(_, a)| cyclic_reduce_g(&word.conjugate_by(&c), &b).map(|(_, bb)| (a, bb)));
        match cores {
            Err(Error::BudgetExceeded { .. }) => skipped += 1,
            Err(e) => return Err(e.to_string()),
            Ok((a, bb)) => {
                ensure(a.t_length() == bb.t_length(), || {
                    format!(
                        "{word} has core t-length {}, conjugate by {c} has {}",
                        a.t_length(),
                        bb.t_length()
                    )
                })?;
                done += 1;
            }
        }
    }
    Ok(format!(
        "100 pairs invariant ({skipped} skipped over budget)"
    ))
}

fn c9_degenerate() -> Outcome {
    let b = Budget::default();
    let mut r = rng(9);
    for _ in 0..50 {
        let wt = random_word(&mut r, &XYT, 6, 5);
        let f = AutImages::new(Word::identity(), Word::identity(), wt.clone());
        ensure(
            verify_hom(&f, &b).map_err(err_str)? == HomCheck::Hom,
            || format!("(1, 1, {wt}) not hom"),
        )?;
        let c = classify(&f, &b).map_err(err_str)?;
        ensure(
            c == Classification::Degenerate {
                t_image: wt.clone(),
            },
            || format!("(1, 1, {wt}) -> {}", c.kind()),
        )?;
    }
    let mut tested = 0;
    while tested < 50 {
        let wx = if r.gen_bool(0.5) {
            Word::identity()
        } else {
            relator_product(&mut r, 3, 2)
        };
        let wy = random_word(&mut r, &XYT, 4, 3);
        if g_is_identity(&wy, &b).map_err(err_str)? {
            continue;
        }
        let wt = random_word(&mut r, &XYT, 4, 3);
        let f = AutImages::new(wx.clone(), wy.clone(), wt.clone());
        ensure(
            matches!(
                verify_hom(&f, &b).map_err(err_str)?,
                HomCheck::NotHom { .. }
            ),
            || format!("({wx}, {wy}, {wt}) verified as hom"),
        )?;
        tested += 1;
    }
    Ok("50 degenerate endomorphisms; 50 images with F(x) = 1 != F(y) rejected".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("relation fidelity", 1, c1_relation_fidelity),
        ("H word problem vs rewriting oracle", 60, c2_h_word_problem),
        ("Britton soundness and completeness sample", 60, c3_britton),
        ("Out(G) addition at classifier level", 120, c4_out_addition),
        (
            "classifier recovery under inner twisting",
            120,
            c5_twisted_recovery,
        ),
        ("Hopfian and co-Hopfian suite", 120, c6_hopfian),
        ("conjugacy closed form vs search", 120, c7_conjugacy),
        (
            "t-length invariance under conjugation",
            60,
            c8_t_length_invariance,
        ),
        ("degenerate family", 30, c9_degenerate),
    ];
    let mut failures = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let within = elapsed <= Duration::from_secs(*limit);
        let (status, detail) = match (&outcome, within) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("over the {limit}s limit; {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!(
            "criterion {}: {status} [{name}] {:.2}s / {limit}s: {detail}",
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
