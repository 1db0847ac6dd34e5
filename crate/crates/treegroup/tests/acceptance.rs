//! Acceptance run: one line per criterion, non-zero exit if any fails.
//!
//! Expected values are computed here from closed formulas or by brute-force
//! tree actions, never by calling the routine under test twice.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use treegroup::basilica::{beta, bp_generators, omega_embed, on_power_alphabet, LetterOrder};
use treegroup::groups::{
    activity_sequence, generalised_basilica_stabilizer, is_bounded, is_self_similar_closed, is_spherically_transitive,
    is_strongly_fractal_at, nucleus, nucleus_bp_candidate, verify_stabilizer_generators, QuotientOptions,
};
use treegroup::hausdorff::{
    circulant_rank, closed_form_generalised, dimension_estimate, ggs_bp_dimension, obstruction_series,
    predicted_bp_obstructions,
};
use treegroup::lpres::{verify_relators, FreeWord, LPresentation};
use treegroup::{zoo, Automorphism, Execution, GroupSpec, Machine, Perm};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn frac(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn base(m: usize, d: usize) -> GroupSpec {
    if d == 1 {
        zoo::odometer(m)
    } else {
        zoo::odometer_product(m, d).unwrap()
    }
}

fn ints(xs: &[BigRational]) -> Vec<i64> {
    xs.iter().map(|x| x.to_integer().to_i64().unwrap()).collect()
}

/// Random word of the given length in the generators and their inverses.
fn random_element(g: &GroupSpec, len: usize, rng: &mut ChaCha8Rng) -> Automorphism {
    let mut acc = Automorphism::identity(g.m());
    for _ in 0..len {
        let h = g.generator(rng.gen_range(0..g.len()));
        let h = if rng.gen_bool(0.5) { h.clone() } else { h.inverse() };
        acc = acc.compose(&h).unwrap();
    }
    acc
}

fn random_vertex(m: usize, len: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    (0..len).map(|_| rng.gen_range(0..m)).collect()
}

fn criterion_1() -> Outcome {
    let opts = QuotientOptions::default();
    let mut notes = Vec::new();
    for (d, m, s) in [(1, 2, 2), (1, 2, 3), (2, 2, 2), (1, 3, 2)] {
        let levels = if m == 2 { 10 } else { 8 };
        let b = zoo::generalised_basilica(d, m, s).unwrap();
        let measured = obstruction_series(&b, levels, opts).map_err(|e| e.to_string())?;
        ensure(measured.is_integral(), || format!("({d},{m},{s}): non-integral series"))?;
        let g_levels = (measured.o.len() - 1) / s + 1;
        let o_g = obstruction_series(&base(m, d), g_levels, opts).map_err(|e| e.to_string())?.o;
        let predicted = predicted_bp_obstructions(&o_g, s, measured.o.len() - 1).map_err(|e| e.to_string())?;
        ensure(predicted == measured.o, || {
            format!("({d},{m},{s}): measured {:?} predicted {:?}", ints(&measured.o), ints(&predicted))
        })?;
        notes.push(format!("({d},{m},{s}) to level {levels}"));
    }
    // log-orders of bp₂(O₂) from the recurrence L(n) = 2L(n−1) − o(n), with
    // o(n) = 1 at even n and 0 at odd n, cross-checked by Schreier–Sims
    let b = zoo::generalised_basilica(1, 2, 2).unwrap();
    let mut step = 1i64;
    let mut expected = vec![0i64, 1];
    for n in 1..7 {
        step = 2 * step - if n % 2 == 0 { 1 } else { 0 };
        expected.push(expected.last().unwrap() + step);
    }
    ensure(expected[1..] == [1, 3, 6, 12, 23, 45, 88], || format!("recurrence gives {expected:?}"))?;
    let layered = obstruction_series(&b, 7, opts).unwrap();
    let generic = obstruction_series(&b, 7, QuotientOptions { force_generic: true, ..opts }).unwrap();
    ensure(ints(&layered.log_orders) == expected, || format!("bp₂(O₂) log-orders {:?}", ints(&layered.log_orders)))?;
    ensure(generic.log_orders == layered.log_orders, || "Schreier–Sims disagrees with the layered engine".into())?;
    let b3 = zoo::generalised_basilica(1, 3, 2).unwrap();
    let l3 = obstruction_series(&b3, 4, opts).unwrap();
    let g3 = obstruction_series(&b3, 4, QuotientOptions { force_generic: true, ..opts }).unwrap();
    ensure(l3 == g3, || "Schreier–Sims disagrees on bp₂(O₃)".into())?;
    Ok(format!("{}; bp₂(O₂) log-orders 1,3,6,12,23,45,88", notes.join(", ")))
}

fn criterion_2() -> Outcome {
    let b = zoo::generalised_basilica(1, 2, 2).unwrap();
    let series = obstruction_series(&b, 11, QuotientOptions::default()).map_err(|e| e.to_string())?;
    let est = dimension_estimate(&series, 10).map_err(|e| e.to_string())?;
    let gap = (est.to_f64().unwrap() - 2.0 / 3.0).abs();
    ensure(gap <= 0.03, || format!("estimate {est} is {gap:.4} from 2/3"))?;
    // m(m^{s−1} − 1)/(m^s − 1) evaluated by hand
    for (m, s, want) in [(2, 2, frac(2, 3)), (2, 3, frac(6, 7)), (3, 2, frac(3, 4))] {
        let got = closed_form_generalised(m, s);
        ensure(got == want, || format!("closed form ({m},{s}) = {got}, expected {want}"))?;
    }
    criterion_1().map_err(|e| format!("exact pattern: {e}"))?;
    Ok(format!("estimate(10) = {est} ≈ {:.4}; closed forms 2/3, 6/7, 3/4", est.to_f64().unwrap()))
}

fn criterion_3() -> Outcome {
    let opts = QuotientOptions::default();
    let t = circulant_rank(3, &[1, 2]).map_err(|e| e.to_string())?;
    ensure(t == 2, || format!("circulant rank {t}"))?;
    let gs = zoo::gupta_sidki(3).unwrap();
    let series = obstruction_series(&gs, 7, opts).map_err(|e| e.to_string())?;
    let logs = ints(&series.log_orders);
    for n in 1..=6 {
        let want = if n == 1 { 1 } else { 2 * 3i64.pow(n as u32 - 2) + 1 };
        ensure(logs[n] == want, || format!("log₃|G/St({n})| = {}, expected {want}", logs[n]))?;
    }
    let o = ints(&series.o);
    ensure(o[..4] == [-1, 1, 2, 0] && o[4..].iter().all(|&x| x == 0), || format!("Gupta–Sidki obstructions {o:?}"))?;
    let b = bp_generators(&gs, 2).unwrap();
    let ob = ints(&obstruction_series(&b, 7, opts).map_err(|e| e.to_string())?.o);
    ensure(ob == [-1, 0, 1, 0, 2, 0, 0], || format!("bp₂ obstructions {ob:?}"))?;
    // the limit 1 − Σ 3^{−i} o(i) of the measured series against 70/81
    let limit = ob.iter().enumerate().skip(1).fold(BigRational::one(), |acc, (i, &x)| acc - q(x) / q(3i64.pow(i as u32)));
    let predicted = ggs_bp_dimension(3, 2, 2);
    ensure(predicted == frac(70, 81) && limit == predicted, || format!("bp₂ dimension {predicted}, measured limit {limit}"))?;
    Ok("t = 2; log-orders 1,3,7,19,55,163; o = (−1,1,2,0,…); bp₂ o(2)=1, o(4)=2, dimension 70/81".into())
}

fn criterion_4() -> Outcome {
    let mut count = 0;
    for (s, n_max) in [(2, 5), (3, 4)] {
        let b = zoo::generalised_basilica(1, 2, s).unwrap();
        for n in 1..=n_max {
            let claimed = generalised_basilica_stabilizer(&b, 1, s, n).map_err(|e| e.to_string())?;
            let rep = verify_stabilizer_generators(&b, &claimed, n, n + 2, QuotientOptions::default())
                .map_err(|e| e.to_string())?;
            ensure(rep.holds(), || format!("bp_{s}(O₂), n = {n}: {rep:?}"))?;
            count += 1;
        }
    }
    // a wrong exponent must be caught
    let b = zoo::generalised_basilica(1, 2, 2).unwrap();
    let mut wrong = generalised_basilica_stabilizer(&b, 1, 2, 3).unwrap();
    wrong[0][0].1 *= 2;
    let rep = verify_stabilizer_generators(&b, &wrong, 3, 5, QuotientOptions::default()).unwrap();
    ensure(!rep.holds(), || "doubled exponent accepted".into())?;
    Ok(format!("{count} cases with exact order equality; doubled exponent rejected"))
}

fn criterion_5() -> Outcome {
    let mut total = 0;
    for (d, m, s) in [(1, 2, 2), (1, 2, 3), (1, 3, 2), (2, 2, 2)] {
        let p = LPresentation::new(d, m, s).unwrap();
        let b = zoo::generalised_basilica(d, m, s).unwrap();
        let rels = p.relators(3, 2);
        let check = verify_relators(&b, &rels, Execution::Parallel).map_err(|e| e.to_string())?;
        ensure(check.holds(), || format!("({d},{m},{s}): relators {:?} are nontrivial", check.failures))?;
        ensure(p.abelianization_check(3, 2), || format!("({d},{m},{s}): nonzero exponent sum"))?;
        total += check.checked;
        // plant a corrupted copy of one relator: one letter with its exponent flipped
        let victim = rels.len() / 2;
        let mut letters = rels[victim].letters().to_vec();
        letters[0].1 = -letters[0].1;
        let mut planted = rels.clone();
        planted.push(FreeWord::from_letters(letters));
        let control = verify_relators(&b, &planted, Execution::Parallel).unwrap();
        ensure(control.failures == vec![rels.len()], || format!("({d},{m},{s}): control gave {:?}", control.failures))?;
    }
    Ok(format!("{total} relators trivial; planted corrupt relator detected in all four groups"))
}

fn criterion_6() -> Outcome {
    let mut notes = Vec::new();
    for (d, m, s) in [(1, 2, 2), (2, 2, 2), (1, 3, 2), (1, 2, 3), (1, 3, 3), (2, 3, 3)] {
        let p = LPresentation::new(d, m, s).unwrap();
        let inv = p.class2_quotient(4, 2).map_err(|e| format!("({d},{m},{s}): {e}"))?;
        let (rank, torsion): (usize, Vec<String>) = if s == 2 {
            (d * d, vec![])
        } else {
            let mut t = vec![m.to_string(); d * s - 2];
            t.push((m * m).to_string());
            (0, t)
        };
        ensure(inv.free_rank == rank && inv.torsion == torsion, || {
            format!("({d},{m},{s}): rank {} torsion {:?}", inv.free_rank, inv.torsion)
        })?;
        if s > 2 {
            let want = BigUint::from(m).pow((d * s) as u32);
            ensure(inv.torsion_order() == want, || format!("({d},{m},{s}): torsion order {}", inv.torsion_order()))?;
        }
        notes.push(if s == 2 { format!("Z^{rank}") } else { format!("[{}]", torsion.join(",")) });
    }
    Ok(notes.join(" "))
}

fn criterion_7() -> Outcome {
    let opts = QuotientOptions::default();
    let groups = [
        ("O₂", zoo::odometer(2)),
        ("O₃²", zoo::odometer_product(3, 2).unwrap()),
        ("Gupta–Sidki 3", zoo::gupta_sidki(3).unwrap()),
        ("Grigorchuk", zoo::grigorchuk()),
    ];
    for (name, g) in &groups {
        for s in [2, 3] {
            let b = bp_generators(g, s).unwrap();
            ensure(is_spherically_transitive(&b, 8).map_err(|e| e.to_string())?, || format!("bp_{s}({name}) not transitive"))?;
            ensure(is_strongly_fractal_at(&b, 6, opts).map_err(|e| e.to_string())?, || format!("bp_{s}({name}) not strongly fractal"))?;
            ensure(is_self_similar_closed(&b), || format!("bp_{s}({name}) not self-similar"))?;
        }
    }
    let o = nucleus(&zoo::odometer(2), 16, 1000, Execution::Parallel).map_err(|e| e.to_string())?;
    let b = zoo::generalised_basilica(1, 2, 2).unwrap();
    let nb = nucleus(&b, 64, 5000, Execution::Parallel).map_err(|e| e.to_string())?;
    let cand = nucleus_bp_candidate(&o, 2, 100_000).map_err(|e| e.to_string())?;
    ensure(nb.elements().all(|h| cand.contains(h)), || "nucleus of bp₂(O₂) not inside the candidate".into())?;
    // β is a homomorphism, and β^s_i ∘ β^t_j = β^{st}_{i+sj}
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    for round in 0..200 {
        let (_, g) = &groups[round % groups.len()];
        let x = random_element(g, rng.gen_range(0..6), &mut rng);
        let y = random_element(g, rng.gen_range(0..6), &mut rng);
        let s = rng.gen_range(1..4);
        let i = rng.gen_range(0..s);
        let lhs = beta(&x.compose(&y).unwrap(), s, i).unwrap();
        let rhs = beta(&x, s, i).unwrap().compose(&beta(&y, s, i).unwrap()).unwrap();
        ensure(lhs == rhs, || format!("β^{s}_{i} not multiplicative on round {round}"))?;
        let t = rng.gen_range(1..4);
        let j = rng.gen_range(0..t);
        let nested = beta(&beta(&x, t, j).unwrap(), s, i).unwrap();
        ensure(nested == beta(&x, s * t, i + s * j).unwrap(), || format!("bp_{s}∘bp_{t} mismatch on round {round}"))?;
        checked += 1;
    }
    Ok(format!(
        "8 groups transitive to 8, strongly fractal at 6, self-similar; nucleus of bp₂(O₂) has {} elements, candidate {}; {checked} random β checks",
        nb.len(),
        cand.len()
    ))
}

fn cycle(m: usize, cycles: &[Vec<usize>]) -> Perm {
    Perm::from_cycles(m, cycles).unwrap()
}

fn criterion_8() -> Outcome {
    let rev = LetterOrder::ReverseLex;
    let gs = zoo::gupta_sidki(3).unwrap();
    let (a, b) = (gs.get("a").unwrap(), gs.get("b").unwrap());
    let lift = |h: &Automorphism| on_power_alphabet(h, 2, rev).unwrap();
    let a0 = lift(&beta(a, 2, 0).unwrap());
    let a1 = lift(&beta(a, 2, 1).unwrap());
    let b0 = lift(&beta(b, 2, 0).unwrap());
    let b1 = lift(&beta(b, 2, 1).unwrap());
    let id9 = Automorphism::identity(9);
    // 00 10 20 01 … are letters 0 1 2 3 … under reverse-lex
    ensure(a0 == Automorphism::rooted(cycle(9, &[vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]])), || "β²₀(a)".into())?;
    ensure(a1 == Automorphism::rooted(cycle(9, &[vec![0, 3, 6]])), || "β²₁(a)".into())?;
    let mut secs = vec![id9.clone(); 9];
    secs[0] = b0.clone();
    secs[1] = a0.clone();
    secs[2] = a0.inverse();
    ensure(b0.decompose() == (Perm::identity(9), secs), || "β²₀(b)".into())?;
    let mut secs = vec![id9; 9];
    secs[0] = b1.clone();
    secs[3] = a1.clone();
    secs[6] = a1.inverse();
    ensure(b1.decompose() == (Perm::identity(9), secs), || "β²₁(b)".into())?;

    let gr = zoo::grigorchuk();
    let [a, b, c] = ["a", "b", "c"].map(|n| gr.get(n).unwrap().clone());
    let id4 = Automorphism::identity(4);
    let alpha = lift(&beta(&a, 2, 0).unwrap());
    let big_a = lift(&beta(&a, 2, 1).unwrap());
    let [bb, kappa] = [&b, &c].map(|h| lift(&beta(h, 2, 0).unwrap()));
    let [big_b, big_k] = [&b, &c].map(|h| lift(&beta(h, 2, 1).unwrap()));
    let delta = bb.compose(&kappa).unwrap();
    let big_delta = big_b.compose(&big_k).unwrap();
    let tuples = [
        (&bb, vec![kappa.clone(), alpha.clone(), id4.clone(), id4.clone()], "β"),
        (&big_b, vec![big_k.clone(), id4.clone(), big_a.clone(), id4.clone()], "B"),
        (&kappa, vec![delta.clone(), alpha.clone(), id4.clone(), id4.clone()], "κ"),
        (&big_k, vec![big_delta, id4.clone(), big_a.clone(), id4.clone()], "K"),
    ];
    for (h, want, name) in tuples {
        ensure(h.decompose() == (Perm::identity(4), want), || format!("{name} section tuple (reverse-lex)"))?;
    }
    // the displayed rooted permutations read X² lexicographically; under
    // reverse-lex the same elements are (0 1)(2 3) and (0 2)
    ensure(alpha == Automorphism::rooted(cycle(4, &[vec![0, 1], vec![2, 3]])), || "α (reverse-lex)".into())?;
    ensure(big_a == Automorphism::rooted(cycle(4, &[vec![0, 2]])), || "A (reverse-lex)".into())?;
    let lex = |h: &Automorphism| on_power_alphabet(h, 2, LetterOrder::Lex).unwrap();
    ensure(lex(&beta(&a, 2, 0).unwrap()) == Automorphism::rooted(cycle(4, &[vec![0, 2], vec![1, 3]])), || "α (lex)".into())?;
    ensure(lex(&beta(&a, 2, 1).unwrap()) == Automorphism::rooted(cycle(4, &[vec![0, 1]])), || "A (lex)".into())?;
    Ok("Gupta–Sidki displays exact; Grigorchuk section tuples exact under reverse-lex, rooted α, A as displayed under lex (see ledger)".into())
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let groups = [zoo::odometer(2), zoo::gupta_sidki(3).unwrap(), zoo::grigorchuk(), zoo::generalised_basilica(2, 2, 2).unwrap()];
    for trial in 0..500 {
        let g = &groups[trial % groups.len()];
        let m = g.m();
        let x = random_element(g, rng.gen_range(1..7), &mut rng);
        let y = random_element(g, rng.gen_range(1..7), &mut rng);
        let ul = rng.gen_range(0..=6);
        let u = random_vertex(m, ul, &mut rng);
        let v = random_vertex(m, 6 - ul, &mut rng);
        let uv = [u.clone(), v.clone()].concat();
        // (g|_u)|_v = g|_{uv}
        ensure(x.section(&u).unwrap().section(&v).unwrap() == x.section(&uv).unwrap(), || format!("section law, trial {trial}"))?;
        // (gh)|_u = g|_{h(u)} h|_u
        let lhs = x.compose(&y).unwrap().section(&u).unwrap();
        let rhs = x.section(&y.act(&u).unwrap()).unwrap().compose(&y.section(&u).unwrap()).unwrap();
        ensure(lhs == rhs, || format!("product law, trial {trial}"))?;
        // the section acts as the tail of the action: g(uv) = g(u)·g|_u(v)
        let tail = x.section(&u).unwrap().act(&v).unwrap();
        ensure(x.act(&uv).unwrap() == [x.act(&u).unwrap(), tail].concat(), || format!("action, trial {trial}"))?;
    }
    // portrait formula, checked by walking the tree letter by letter
    let mut checked = 0;
    for trial in 0..500 {
        let g = &groups[trial % 3];
        let m = g.m();
        let x = random_element(g, rng.gen_range(1..6), &mut rng);
        let s = rng.gen_range(2..4);
        let i = rng.gen_range(0..s);
        let bx = beta(&x, s, i).unwrap();
        let u = random_vertex(m, rng.gen_range(0..=6), &mut rng);
        let want = if u.len() >= i && u[..i].iter().all(|&z| z == 0) && (u.len() - i).is_multiple_of(s) {
            let blocks: Vec<&[usize]> = u[i..].chunks(s).collect();
            if blocks.iter().all(|blk| blk[1..].iter().all(|&z| z == 0)) {
                let v: Vec<usize> = blocks.iter().map(|blk| blk[0]).collect();
                ensure(omega_embed(i, s, &v).unwrap() == u, || format!("ω_{i} image, trial {trial}"))?;
                Some(x.label(&v).unwrap())
            } else {
                None
            }
        } else {
            None
        };
        let want = want.unwrap_or_else(|| Perm::identity(m));
        // label via explicit images: σ(y) = first letter of bx(u y) after u
        let images: Vec<usize> = (0..m).map(|y| bx.act(&[u.clone(), vec![y]].concat()).unwrap()[u.len()]).collect();
        ensure(Perm::from_images(images).unwrap() == want, || format!("portrait of β^{s}_{i}, trial {trial}"))?;
        checked += 1;
    }
    Ok(format!("500 section/product/action instances and {checked} portrait instances to depth 6"))
}

/// Growth class read off μ_0..μ_24 alone: bounded when the second half adds
/// no new maximum.
fn activity_says_bounded(g: &Automorphism) -> bool {
    let mu = activity_sequence(g, 24);
    let first = mu[..=12].iter().max().unwrap();
    mu[13..].iter().all(|x| x <= first)
}

fn criterion_10() -> Outcome {
    // (element, expected class); π_i(a) for d ≥ 2 carries m copies of a
    // coordinate odometer on every level, so its activity grows
    let mut elems: Vec<(String, Automorphism, bool)> = Vec::new();
    let zoo_groups = [
        (zoo::odometer(2), true),
        (zoo::odometer(3), true),
        (zoo::odometer_product(3, 2).unwrap(), false),
        (zoo::generalised_basilica(1, 2, 2).unwrap(), true),
        (zoo::generalised_basilica(2, 3, 2).unwrap(), false),
        (zoo::gupta_sidki(3).unwrap(), true),
        (zoo::grigorchuk(), true),
        (zoo::fabrykowski_gupta(), true),
        (zoo::infinite_dihedral(), true),
    ];
    for (g, bounded) in &zoo_groups {
        for (name, h) in g.named() {
            elems.push((name.clone(), h.clone(), *bounded));
            for s in [2, 3] {
                for i in 0..s {
                    elems.push((format!("β^{s}_{i}({name})"), beta(h, s, i).unwrap(), *bounded));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let a2 = zoo::odometer(2).generator(0).clone();
    for k in 0..50 {
        let mut acc = Automorphism::identity(2);
        for _ in 0..rng.gen_range(1..4) {
            let f = if rng.gen_bool(0.5) {
                let v = random_vertex(2, rng.gen_range(0..5), &mut rng);
                zoo::finitary(&Perm::shift(2, 1), &v, 2).unwrap()
            } else {
                let e = rng.gen_range(-3..4);
                beta(&a2.pow(e).unwrap(), rng.gen_range(1..3), 0).unwrap()
            };
            acc = acc.compose(&f).unwrap();
        }
        elems.push((format!("composite {k}"), acc, true));
    }
    // controls with growing activity
    let mut mach = Machine::new(2);
    let (p, r) = (mach.add_placeholder(), mach.add_placeholder());
    mach.set(p, Perm::shift(2, 1), vec![p, r]);
    mach.set(r, Perm::identity(2), vec![p, r]);
    elems.push(("lamplighter a".into(), mach.automorphism(p).unwrap(), false));
    let mut mach = Machine::new(2);
    let id = mach.identity_state();
    let r = mach.add_placeholder();
    let p = mach.add_placeholder();
    mach.set(r, Perm::shift(2, 1), vec![r, id]);
    mach.set(p, Perm::shift(2, 1), vec![p, r]);
    elems.push(("chained cycles".into(), mach.automorphism(p).unwrap(), false));

    let mut unbounded = 0;
    for (name, h, expected) in &elems {
        let by_activity = activity_says_bounded(h);
        ensure(is_bounded(h) == by_activity, || format!("{name}: is_bounded {} vs activity {by_activity}", is_bounded(h)))?;
        ensure(by_activity == *expected, || format!("{name}: classified bounded = {by_activity}"))?;
        if !by_activity {
            unbounded += 1;
        }
    }
    Ok(format!("{} elements agree ({} bounded, {unbounded} unbounded)", elems.len(), elems.len() - unbounded))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("obstruction exactness", criterion_1),
        ("Hausdorff closed form", criterion_2),
        ("GGS quotients", criterion_3),
        ("stabiliser generators", criterion_4),
        ("L-presentation soundness", criterion_5),
        ("γ₂/γ₃ invariants", criterion_6),
        ("property suites", criterion_7),
        ("worked examples", criterion_8),
        ("section/label algebra", criterion_9),
        ("boundedness", criterion_10),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.1}s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({secs:.1}s)", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

