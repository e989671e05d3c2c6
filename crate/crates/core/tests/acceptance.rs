//! One line per acceptance criterion, then a single assertion that all passed.

use std::io::Write;
use std::sync::Arc;
use std::time::{Duration, Instant};

use tambara::burnside::{check_rho_norm, OmegaFunctor};
use tambara::fixed_point::{counting_morphism, FixedPointFunctor, GRing, IntegerFixedPoint};
use tambara::group::{builtin, Group};
use tambara::ideals::{
    check_ideal, coprime_and_crt, first_iso_check, generate, invariant_ideal_lift, GenerateParams, DEFAULT_BOX,
};
use tambara::level_ideal::LevelIdeal;
use tambara::ring::Elem;
use tambara::spectrum::{
    enumerate_ideals, sample_domain_witnesses, spec, spec_inclusion_demo, SpectrumReport, DEFAULT_CANDIDATE_CAP,
};
use tambara::tambara::{elementary_maps, parse_map, Functor, Tambara};
use tambara::verify::{verify_axioms, VerifyBounds};

const SEED: u64 = 0x5EED_0001;

type Outcome = Result<String, String>;

fn group(name: &str) -> Arc<Group> {
    Arc::new(builtin(name).unwrap())
}

fn omega(name: &str) -> Arc<OmegaFunctor> {
    Arc::new(OmegaFunctor::new(group(name)).unwrap())
}

fn pr(r: GRing) -> Functor {
    Arc::new(FixedPointFunctor::new(Arc::new(r)))
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

/// The finite functors of the spectra criterion, by name.
fn finite_cases() -> Vec<(&'static str, Functor)> {
    let g = group("c2");
    vec![
        ("P(F2 trivial)", pr(GRing::zmod(g.clone(), 2).unwrap())),
        ("P(F2xF2 swap)", pr(GRing::prodfield(g.clone(), 2, 2, true).unwrap())),
        ("P(F2xF2 trivial)", pr(GRing::prodfield(g.clone(), 2, 2, false).unwrap())),
        ("P(Z/4 trivial)", pr(GRing::zmod(g.clone(), 4).unwrap())),
        ("P(Z/6 trivial)", pr(GRing::zmod(g, 6).unwrap())),
    ]
}

/// Π_f(A) for `f: C2 → pt` and `A = k` free orbits over `C2`: sections
/// `s: {0,1} → A` with the swap acting by conjugation. Returns the orbit
/// counts `([G/G], [G/e])`.
fn section_orbits(k: usize) -> (i64, i64) {
    // A = {(i, x)}: copy i, point x over x; the generator swaps x.
    let sections: Vec<(usize, usize)> = (0..k).flat_map(|a| (0..k).map(move |b| (a, b))).collect();
    // (g·s)(x) = g·s(g⁻¹x), so (a, b) ↦ (b, a)
    let fixed = sections.iter().filter(|(a, b)| a == b).count() as i64;
    let free = (sections.len() as i64 - fixed) / 2;
    (fixed, free)
}

fn c1_paper_norm() -> Outcome {
    let start = Instant::now();
    let o = omega("c2");
    let g = o.group().clone();
    let m = parse_map(&g, "pGe").map_err(e)?;
    let got = o.norm_by_enumeration(&m, &[2]).map_err(e)?;
    let elapsed = start.elapsed();
    let (fixed, free) = section_orbits(2);
    // Ω(G/G) has basis [G/e], [G/G]
    ensure(got == vec![free, fixed], format!("enumeration gave {got:?}"))?;
    ensure(got == vec![1, 2], format!("expected 2*[G/G] + 1*[G/e], got {got:?}"))?;
    ensure(elapsed < Duration::from_secs(1), format!("took {elapsed:?}"))?;
    Ok(format!("nm(2*[G/e]) = {} in {elapsed:?}", o.level(1).format(&Elem(got))))
}

fn c2_axioms() -> Outcome {
    let start = Instant::now();
    let g = |n| group(n);
    let mut cases: Vec<Functor> = ["c2", "c3", "c4", "s3"].iter().map(|n| omega(n) as Functor).collect();
    cases.push(pr(GRing::zmod(g("c2"), 6).unwrap()));
    cases.push(pr(GRing::prodfield(g("c2"), 2, 2, true).unwrap()));
    cases.push(pr(GRing::prodfield(g("c2"), 2, 2, false).unwrap()));
    cases.push(pr(GRing::zmod(g("c2"), 4).unwrap()));
    let mut checks = 0;
    for t in &cases {
        let r = verify_axioms(t, &VerifyBounds::default());
        ensure(r.passed(), r.render())?;
        checks += r.results.iter().map(|x| x.checks).sum::<usize>();
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), format!("took {elapsed:?}"))?;
    Ok(format!("{} functors, {checks} checks, {elapsed:?}", cases.len()))
}

fn c3_rho_norm() -> Outcome {
    let mut total = 0;
    for name in ["c2", "c3", "c4", "s3"] {
        let o = omega(name);
        let r = check_rho_norm(&o, 200, SEED).map_err(e)?;
        ensure(r.passed(), format!("{name}: {:?}", r.failures))?;
        total += r.checked;
        // the polynomial shriek agrees with explicit Π on genuine sets
        let g = o.group().clone();
        for class in 0..g.num_classes() {
            let pt = tambara::tambara::TransMap::projection(&g, class, g.top_class()).map_err(e)?;
            let dim = o.level(class).additive_generators().len();
            for k in 0..3i64 {
                let x: Vec<i64> = (0..dim as i64).map(|i| (k + i) % 2).collect();
                let poly = o.shriek(&pt, &Elem(x.clone())).map_err(e)?;
                let direct = o.norm_by_enumeration(&pt, &x).map_err(e)?;
                ensure(poly.0 == direct, format!("{name}: shriek of {x:?} disagrees with Π"))?;
            }
        }
    }
    Ok(format!("{total} samples over c2, c3, c4, s3, zero failures"))
}

fn c4_mrc_iso() -> Outcome {
    let mut notes = Vec::new();
    for name in ["c2", "c3", "s3"] {
        let o = omega(name);
        let g = o.group().clone();
        let pz: Functor = Arc::new(IntegerFixedPoint::new(g.clone()));
        let phi = counting_morphism(o.clone(), pz).map_err(e)?;
        let r = first_iso_check(&phi, SEED).map_err(e)?;
        ensure(r.is_isomorphism(), format!("{name}: {:?}", r.failures))?;
        // the image is all of P_Z: every level is ℤ
        for c in 0..g.num_classes() {
            ensure(r.image.level(c).size().is_none(), format!("{name}: finite image level"))?;
        }
        if name == "c2" {
            let m = parse_map(&g, "pGe").map_err(e)?;
            for k in -5i64..=5 {
                let y = r.quotient.level(0).from_int(k);
                let n = r.iso.apply(1, &r.quotient.nm(&m, &y).map_err(e)?);
                ensure(n == Elem(vec![k * k]), format!("nm({k}) = {n:?}"))?;
            }
        }
        notes.push(name);
    }
    Ok(format!("isomorphism over {}; nm is m -> m^2 on [-5, 5]", notes.join(", ")))
}

fn c5_two_omega() -> Outcome {
    let o = omega("c2");
    let t: Functor = o.clone();
    let levels: Vec<LevelIdeal> = (0..2)
        .map(|c| {
            let r = t.level(c);
            LevelIdeal::generate(r, &[r.from_int(2)])
        })
        .collect();
    let check = check_ideal(&t, &levels, DEFAULT_BOX).map_err(e)?;
    ensure(check.res.holds && check.tr.holds, "conditions (i) and (ii) should hold")?;
    ensure(!check.shriek.holds, "condition (iii) should fail")?;
    let witness = check.shriek.counterexample.clone().unwrap_or_default();
    // f_!(2[G/e]) counted by sections has an odd [G/e] coefficient, so it is not in 2Ω(G/G)
    let (fixed, free) = section_orbits(2);
    let expected = format!(
        "along pGe: f_!(2*[G/e]) = {} is not in I(G/G)",
        t.level(1).format(&Elem(vec![free, fixed]))
    );
    ensure(free % 2 == 1, "oracle: [G/e] coefficient should be odd")?;
    ensure(witness == expected, format!("counterexample `{witness}`, expected `{expected}`"))?;
    Ok(format!("condition (iii) fails: {witness}"))
}

/// Every Tambara ideal of a functor with finite levels over its group, by
/// brute force over pairs of subsets.
fn brute_force_ideals(t: &Functor) -> usize {
    let g = t.group().clone();
    let n = t.num_levels();
    let elems: Vec<Vec<Elem>> = (0..n).map(|c| t.level(c).elements(64).unwrap()).collect();
    let idx = |c: usize, x: &Elem| elems[c].iter().position(|y| y == x).unwrap();
    let maps = elementary_maps(&g);
    // candidate level ideals: subsets closed under + and multiplication by the ring
    let candidates: Vec<Vec<u64>> = (0..n)
        .map(|c| {
            let r = t.level(c);
            let es = &elems[c];
            (0u64..1 << es.len())
                .filter(|&s| {
                    let has = |x: &Elem| s >> idx(c, x) & 1 == 1;
                    has(&r.zero())
                        && (0..es.len()).filter(|i| s >> i & 1 == 1).all(|i| {
                            (0..es.len()).all(|j| {
                                (s >> j & 1 == 0 || has(&r.add(&es[i], &es[j]))) && has(&r.mul(&es[i], &es[j]))
                            })
                        })
                })
                .collect()
        })
        .collect();
    let mut count = 0;
    let mut choice = vec![0u64; n];
    fn rec(
        c: usize,
        choice: &mut Vec<u64>,
        candidates: &[Vec<u64>],
        accept: &dyn Fn(&[u64]) -> bool,
        count: &mut usize,
    ) {
        if c == candidates.len() {
            if accept(choice) {
                *count += 1;
            }
            return;
        }
        for &s in &candidates[c] {
            choice[c] = s;
            rec(c + 1, choice, candidates, accept, count);
        }
    }
    let accept = |ch: &[u64]| {
        maps.iter().all(|m| {
            let (src, dst) = (m.src, m.dst);
            let in_src: Vec<&Elem> = elems[src].iter().enumerate().filter(|(i, _)| ch[src] >> i & 1 == 1).map(|(_, x)| x).collect();
            let in_dst: Vec<&Elem> = elems[dst].iter().enumerate().filter(|(i, _)| ch[dst] >> i & 1 == 1).map(|(_, x)| x).collect();
            let has = |c: usize, x: &Elem| ch[c] >> idx(c, x) & 1 == 1;
            in_dst.iter().all(|y| has(src, &t.res(m, y)))
                && in_src.iter().all(|x| has(dst, &t.tr(m, x)))
                && elems[src].iter().all(|a| {
                    let na = t.nm(m, a).unwrap();
                    in_src.iter().all(|i| {
                        let shifted = t.nm(m, &t.level(src).add(a, i)).unwrap();
                        has(dst, &t.level(dst).sub(&shifted, &na))
                    })
                })
        })
    };
    rec(0, &mut choice, &candidates, &accept, &mut count);
    count
}

fn report(t: &Functor) -> Result<SpectrumReport, String> {
    spec(t, &[], DEFAULT_CANDIDATE_CAP).map_err(e)
}

fn c6_spectra() -> Outcome {
    let cases = finite_cases();
    for (name, t) in &cases {
        let listed = enumerate_ideals(t, DEFAULT_CANDIDATE_CAP).map_err(e)?.len();
        let brute = brute_force_ideals(t);
        ensure(listed == brute, format!("{name}: {listed} ideals listed, brute force finds {brute}"))?;
    }
    let [f2, swap, triv, z4, _] = &cases[..] else { unreachable!() };

    let r = report(&f2.1)?;
    ensure(r.data.primes.len() == 1 && r.field_like.is_true(), "P(F2): Spec = {(0)}, field-like")?;
    ensure(r.primes()[0].is_zero(), "P(F2): the prime is (0)")?;

    let r = report(&swap.1)?;
    ensure(r.data.primes.len() == 1 && r.primes()[0].is_zero(), "P(F2xF2 swap): Spec = {(0)}")?;
    ensure(r.field_like.is_true(), "P(F2xF2 swap): field-like")?;
    let bottom = swap.1.level(0);
    let zero_divisor = bottom.elements(64).unwrap().iter().any(|a| {
        !bottom.is_zero(a) && bottom.elements(64).unwrap().iter().any(|b| !bottom.is_zero(b) && bottom.is_zero(&bottom.mul(a, b)))
    });
    ensure(zero_divisor, "P(F2xF2 swap): level e should have zero divisors")?;

    let r = report(&triv.1)?;
    ensure(r.data.primes.len() == 2, "P(F2xF2 trivial): exactly 2 primes")?;
    ensure(r.connected.is_false(), "P(F2xF2 trivial): disconnected")?;
    let d = r.disconnection.as_ref().ok_or("P(F2xF2 trivial): no disconnection witness")?;
    let ring = triv.1.level(d.level);
    ensure(ring.add(&d.a, &d.b) == ring.one(), "witness: a + b = 1")?;
    // ⟨a⟩⟨b⟩ = ⟨ab⟩ in a commutative ring
    ensure(ring.is_zero(&ring.mul(&d.a, &d.b)), "witness: <a><b> = (0)")?;

    let r = report(&z4.1)?;
    ensure(r.reduced.is_false(), "P(Z/4): not reduced")?;
    let z2 = pr(GRing::zmod(group("c2"), 2).unwrap());
    same_as_z2(&*r.t_red, &z2)?;
    Ok("F2: {(0)} field-like; F2xF2 swap: {(0)} field-like, e not a domain; F2xF2: 2 primes, disconnected; Z/4: T_red = P(Z/2)".into())
}

/// `t` agrees with `z2` under the unique level-wise ring isomorphism.
fn same_as_z2(t: &dyn Tambara, z2: &Functor) -> Result<(), String> {
    let g = z2.group().clone();
    let to = |c: usize, x: &Elem| if t.level(c).is_zero(x) { z2.level(c).zero() } else { z2.level(c).one() };
    for c in 0..z2.num_levels() {
        ensure(t.level(c).size() == Some(2), "T_red levels should have 2 elements")?;
    }
    for m in elementary_maps(&g) {
        for x in t.level(m.dst).elements(4).unwrap() {
            ensure(to(m.src, &t.res(&m, &x)) == z2.res(&m, &to(m.dst, &x)), "res differs from P(Z/2)")?;
        }
        for x in t.level(m.src).elements(4).unwrap() {
            let y = to(m.src, &x);
            ensure(to(m.dst, &t.tr(&m, &x)) == z2.tr(&m, &y), "tr differs from P(Z/2)")?;
            ensure(to(m.dst, &t.nm(&m, &x).map_err(e)?) == z2.nm(&m, &y).map_err(e)?, "nm differs from P(Z/2)")?;
        }
    }
    Ok(())
}

fn z6() -> Functor {
    pr(GRing::zmod(group("c2"), 6).unwrap())
}

fn c7_crt() -> Outcome {
    let t = z6();
    let re = t.level(0);
    let lift = |k: i64| invariant_ideal_lift(&t, &LevelIdeal::generate(re, &[re.from_int(k)]));
    let r = coprime_and_crt(&[lift(2).map_err(e)?, lift(3).map_err(e)?], GenerateParams::default(), SEED).map_err(e)?;
    ensure(r.holds(), format!("{:?}", r.failure))?;
    ensure(r.coprime && r.product_is_intersection && r.isomorphism, "a statement failed")?;
    // ℤ/6 → ℤ/2 × ℤ/3 is a bijection: 6 elements, 6 distinct residue pairs, all pairs compared
    let pairs: std::collections::BTreeSet<(i64, i64)> = (0..6).map(|x| (x % 2, x % 3)).collect();
    ensure(pairs.len() == 6, "oracle: residues are not distinct")?;
    ensure(r.checks == vec![36, 36], format!("checks per level {:?}", r.checks))?;
    let phi = r.morphism.as_ref().ok_or("no CRT morphism")?;
    ensure(phi.validate(SEED).ok, "CRT map is not a validated morphism")?;
    Ok(format!("coprime, IJ = I cap J, isomorphism; checks {:?}", r.checks))
}

fn c8_omega_domain() -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    for name in ["c2", "c3", "s3"] {
        let o = omega(name);
        let ws = sample_domain_witnesses(&o, 50, SEED).map_err(e)?;
        ensure(ws.len() == 50, format!("{name}: {} pairs", ws.len()))?;
        for w in &ws {
            ensure(w.certified, format!("{name}: uncertified pair"))?;
            ensure(w.rho_product != 0, format!("{name}: ρ of product is zero"))?;
            ensure(w.product.0.iter().any(|&v| v != 0), format!("{name}: product is zero"))?;
        }
        total += ws.len();
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(120), format!("took {elapsed:?}"))?;
    Ok(format!("{total} pairs over c2, c3, s3 certified in {elapsed:?}"))
}

fn c9_topology() -> Outcome {
    let mut checks = 0;
    for (name, t) in finite_cases() {
        let r = report(&t)?;
        ensure(r.laws_hold(), format!("{name}: {:?}", r.law_failures))?;
        ensure(r.law_checks > 0, format!("{name}: no law checked"))?;
        for &m in &r.data.maximals {
            ensure(r.data.primes.contains(&m), format!("{name}: maximal ideal not prime"))?;
        }
        checks += r.law_checks;
    }
    Ok(format!("{checks} law checks over 5 spectra, zero exceptions"))
}

fn c10_maximals() -> Outcome {
    let t = z6();
    let r = report(&t)?;
    ensure(r.data.maximals.len() == 2, format!("{} maximals", r.data.maximals.len()))?;
    ensure(r.maximal_bijection, "no bijection with maximal invariant ideals")?;
    let re = t.level(0);
    let mut found: Vec<i64> = Vec::new();
    for (i0, _) in &r.maximal_correspondence {
        for k in [2, 3] {
            if *i0 == LevelIdeal::generate(re, &[re.from_int(k)]) {
                found.push(k);
            }
        }
    }
    found.sort();
    ensure(found == vec![2, 3], format!("maximals correspond to {found:?}"))?;
    let demo = spec_inclusion_demo(&omega("c2"), &[2, 3], SEED).map_err(e)?;
    ensure(demo.primes.len() >= 3 && demo.all_prime() && demo.all_distinct(), "inclusion demo")?;
    for s in &demo.separations {
        let (a, b) = (&demo.primes[s.first].ideal, &demo.primes[s.second].ideal);
        let (inside, outside) = if s.reversed { (b, a) } else { (a, b) };
        ensure(inside.contains(s.level, &s.element) && !outside.contains(s.level, &s.element), "bad separating element")?;
    }
    Ok(format!("maximals <-> (2), (3); {} distinct primes of Omega", demo.primes.len()))
}

fn c11_trace() -> Outcome {
    let o = omega("c2");
    let t: Functor = o.clone();
    let fam = generate(&t, &[(0, Elem(vec![2]))], GenerateParams::default()).map_err(e)?;
    let trace = fam.trace.as_ref().ok_or("no trace")?;
    let values = trace.replay(&*t).map_err(e)?;
    for (entry, v) in trace.entries.iter().zip(&values) {
        ensure(&entry.value == v, "an entry does not replay to its value")?;
    }
    ensure(trace.rebuild(&*t).map_err(e)? == fam.levels, "rebuilt lattice differs")?;
    // by hand: <2> is 2ℤ at e and spanned by tr(2) = 2[G/e] and f_!(2) = [G/e] + 2[G/G] at G
    let (re, rg) = (t.level(0), t.level(1));
    ensure(fam.levels[0] == LevelIdeal::generate(re, &[Elem(vec![2])]), "level e is not 2Z")?;
    ensure(fam.levels[1] == LevelIdeal::generate(rg, &[Elem(vec![2, 0]), Elem(vec![1, 2])]), "level G differs")?;
    Ok(format!("{} entries replayed; lattice reproduced", trace.entries.len()))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("paper norm example", c1_paper_norm),
        ("axiom suite", c2_axioms),
        ("rho-norm property", c3_rho_norm),
        ("Omega_MRC = P_Z", c4_mrc_iso),
        ("2-Omega rejection", c5_two_omega),
        ("spectra", c6_spectra),
        ("Chinese remainder", c7_crt),
        ("Omega domain-likeness", c8_omega_domain),
        ("topology laws", c9_topology),
        ("maximal-ideal bijection", c10_maximals),
        ("saturation soundness", c11_trace),
    ];
    // written past the harness capture so the lines show on every run
    let mut out = std::io::stdout().lock();
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => writeln!(out, "PASS {:>2} {name}: {detail}", i + 1).unwrap(),
            Err(why) => {
                writeln!(out, "FAIL {:>2} {name}: {why}", i + 1).unwrap();
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
