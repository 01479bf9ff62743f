//! End-to-end acceptance checks, one PASS/FAIL line per criterion. Every
//! comparison is exact. Run with `cargo test --test acceptance`.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{q, Q};
use newton_mu::higher::{r_closed_form, r_newton_branches};
use newton_mu::oracles::{ehrhart_volume, milnor_colength, shuffled_newton_number, Polynomial};
use newton_mu::rational::frac;
use newton_mu::{
    decompose_difference, f_coeff, family_difference, gamma_minus, milnor_lower_bound, negligible_truncation_check,
    newton_number, newton_number_factored, parse_polynomial, r_newton_number, vanishing_check, DegreeTuple,
    FamilyStep, NewtonRegion, Point, Simplex, SupportSet,
};

/// Regions containing `O` seen by the criteria, with their Newton numbers,
/// for the vanishing criterion.
#[derive(Default)]
struct Seen {
    regions: Vec<(NewtonRegion, Q)>,
}

impl Seen {
    fn record(&mut self, region: &NewtonRegion, nu: &Q) {
        if region.contains_origin() {
            self.regions.push((region.clone(), nu.clone()));
        }
    }
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(message())
    }
}

fn nu_of(region: &NewtonRegion) -> Result<Q, String> {
    newton_number(region).map(|r| r.total).map_err(|e| e.to_string())
}

fn simplex_law(seen: &mut Seen) -> Outcome {
    let mut checked = 0;
    for n in 1..=4usize {
        for a in [q(1), q(2), q(3), q(4), q(5), frac(5, 2)] {
            let region = NewtonRegion::standard_simplex(n, a.clone()).map_err(|e| e.to_string())?;
            let value = nu_of(&region)?;
            let mut expected = Q::from_integer(1.into());
            for _ in 0..n {
                expected *= &a - q(1);
            }
            ensure(value == expected, || format!("n={n} a={a}: {value} != {expected}"))?;
            ensure(common::region_nu(&region) == expected, || format!("oracle disagrees at n={n} a={a}"))?;
            seen.record(&region, &value);
            checked += 1;
        }
    }
    Ok(format!("{checked} simplices"))
}

fn brieskorn(seen: &mut Seen) -> Outcome {
    for p in 2..=7u32 {
        for qq in 2..=7u32 {
            let text = format!("x^{p}+y^{qq}");
            let parsed = parse_polynomial(&text).map_err(|e| e.to_string())?;
            let region = gamma_minus(&parsed.support).map_err(|e| e.to_string())?;
            let value = nu_of(&region)?;
            let expected = q((p as i64 - 1) * (qq as i64 - 1));
            ensure(value == expected, || format!("{text}: nu {value} != {expected}"))?;
            let mu = milnor_colength(&parsed.polynomial().map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            ensure(q(mu as i64) == expected, || format!("{text}: mu {mu} != {expected}"))?;
            let cert = milnor_lower_bound(&parsed.support, &[q(p as i64), q(qq as i64)]).map_err(|e| e.to_string())?;
            ensure(cert.verdict && cert.bound == expected, || format!("{text}: certificate {cert:?}"))?;
            seen.record(&region, &value);
        }
    }
    Ok("36 germs".into())
}

struct Fixture {
    label: &'static str,
    text: String,
    vertex: [u32; 4],
    delta: Vec<[i64; 4]>,
    case: &'static str,
}

fn fixtures() -> Vec<Fixture> {
    let mut out = Vec::new();
    for m in 8..=12i64 {
        out.push(Fixture {
            label: "4.2",
            text: format!("x^3+y^3+z^5+x*w^5+t*y^2*z*w+w^{m}"),
            vertex: [0, 2, 1, 1],
            delta: vec![[0, 3, 0, 0], [0, 0, 5, 0], [1, 0, 0, 5], [0, 2, 1, 1], [0, 0, 0, m]],
            case: "i",
        });
        out.push(Fixture {
            label: "4.3",
            text: format!("x^3+y^3+z^5+x*w^5+y*w^5+t*z*w^6+w^{m}"),
            vertex: [0, 0, 1, 6],
            delta: vec![[0, 0, 5, 0], [1, 0, 0, 5], [0, 1, 0, 5], [0, 0, 1, 6], [0, 0, 0, m]],
            case: "ii",
        });
        if m >= 9 {
            out.push(Fixture {
                label: "4.4",
                text: format!("x^2+y^5+z^6+y*w^6+z^2*w^5+t*w^8+w^{m}"),
                vertex: [0, 0, 0, 8],
                delta: vec![[2, 0, 0, 0], [0, 1, 0, 6], [0, 0, 2, 5], [0, 0, 0, 8], [0, 0, 0, m]],
                case: "iii",
            });
        }
    }
    out
}

fn truncation_fixtures(seen: &mut Seen) -> Outcome {
    let all = fixtures();
    for f in &all {
        let ctx = |msg: String| format!("{} ({}): {msg}", f.label, f.text);
        let support = parse_polynomial(&f.text).map_err(|e| ctx(e.to_string()))?.support;
        let step = FamilyStep::new(support.clone(), &f.vertex).map_err(|e| ctx(e.to_string()))?;
        let delta = family_difference(&step).map_err(|e| ctx(e.to_string()))?;
        let expected = Simplex::new(f.delta.iter().map(|p| Point::from_ints(p)).collect()).map_err(|e| ctx(e.to_string()))?;
        ensure(delta == expected, || ctx(format!("delta {delta:?}")))?;
        ensure(common::nu(4, std::slice::from_ref(&delta)).is_zero(), || ctx("nu(delta) != 0".into()))?;
        let f0 = gamma_minus(step.f0()).map_err(|e| ctx(e.to_string()))?;
        let f1 = gamma_minus(&support).map_err(|e| ctx(e.to_string()))?;
        let (nu0, nu1) = (common::region_nu(&f0), common::region_nu(&f1));
        ensure(nu0 == nu1, || ctx(format!("nu(f0)={nu0} nu(f1)={nu1}")))?;
        let verdict = negligible_truncation_check(&step).map_err(|e| ctx(e.to_string()))?;
        let case = verdict.case.map(|c| c.label());
        ensure(verdict.equal && case == Some(f.case), || ctx(format!("case {case:?}")))?;
        ensure(verdict.nu_f0 == nu0 && verdict.nu_delta.is_zero(), || ctx("verdict values".into()))?;
        seen.record(&f0, &nu0);
        seen.record(&f1, &nu1);
    }
    Ok(format!("{} fixtures", all.len()))
}

fn factorisation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..200 {
        let n = rng.gen_range(1..=5);
        let s = common::random_simplex(&mut rng, n, 9);
        let direct = common::nu(n, std::slice::from_ref(&s));
        let library_direct = nu_of(&NewtonRegion::from_simplices(n, vec![s.clone()]).map_err(|e| e.to_string())?)?;
        let factored = newton_number_factored(std::slice::from_ref(&s)).map_err(|e| format!("#{i}: {e}"))?;
        ensure(direct == factored && direct == library_direct, || {
            format!("#{i} {s:?}: oracle {direct}, direct {library_direct}, factored {factored}")
        })?;
    }
    Ok("200 simplices, 0 failures".into())
}

/// Simplex unions sharing one minimal face: single random simplices, split
/// simplices, and the grouped pieces of differences of random nested Newton
/// polyhedra.
fn admissible_unions(rng: &mut ChaCha8Rng, count: usize) -> Vec<(usize, Vec<Simplex>)> {
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(4..=5);
        match out.len() % 3 {
            0 => {
                out.push((n, vec![common::random_simplex(rng, n, 6)]));
                continue;
            }
            1 => {
                if let Some(union) = split_simplex(rng, n) {
                    out.push((n, union));
                }
                continue;
            }
            _ => {}
        }
        let outer = common::random_convenient_support(rng, n, 6, 2);
        let extra: Vec<Vec<u32>> = (0..2)
            .map(|_| (0..n).map(|_| if rng.gen_bool(0.5) { 0 } else { rng.gen_range(1..=2) }).collect())
            .filter(|p: &Vec<u32>| p.iter().any(|&c| c > 0) && !outer.contains(p))
            .collect();
        let Ok(inner) = outer.with_points(extra) else { continue };
        let (Ok(x), Ok(y)) = (gamma_minus(&outer), gamma_minus(&inner)) else { continue };
        let Ok(pieces) = decompose_difference(&x, &y) else { continue };
        for piece in pieces.into_iter().filter(|p| !p.minimal_i.is_empty()) {
            if out.len() < count {
                out.push((n, piece.simplices));
            }
        }
    }
    out
}

/// Cuts a random simplex a few times through the midpoint of an edge whose
/// ends lie off its minimal face, keeping the pieces when they still share
/// that face.
fn split_simplex(rng: &mut ChaCha8Rng, n: usize) -> Option<Vec<Simplex>> {
    let first = common::random_simplex(rng, n, 6);
    let minimal = common::minimal_full_supporting(n, &first);
    let in_minimal = |v: &Point| (0..n).all(|i| minimal >> i & 1 == 1 || v.coords()[i].is_zero());
    let face: Vec<Point> = first.vertices().iter().filter(|v| in_minimal(v)).cloned().collect();
    let mut union = vec![first];
    for _ in 0..rng.gen_range(1..=3) {
        let k = rng.gen_range(0..union.len());
        let outside: Vec<Point> = union[k].vertices().iter().filter(|v| !in_minimal(v)).cloned().collect();
        if outside.len() < 2 {
            return None;
        }
        let i = rng.gen_range(0..outside.len());
        let j = (i + rng.gen_range(1..outside.len())) % outside.len();
        let mid = Point::new(
            outside[i].coords().iter().zip(outside[j].coords()).map(|(a, b)| (a + b) / q(2)).collect(),
        )
        .ok()?;
        let halves = [&outside[i], &outside[j]].map(|drop| {
            let vertices: Vec<Point> = union[k]
                .vertices()
                .iter()
                .filter(|v| *v != drop)
                .cloned()
                .chain(std::iter::once(mid.clone()))
                .collect();
            Simplex::new(vertices)
        });
        let [Ok(a), Ok(b)] = halves else { return None };
        union.swap_remove(k);
        union.extend([a, b]);
    }
    let shares_face = union.iter().all(|s| {
        common::minimal_full_supporting(n, s) == minimal
            && face.iter().all(|v| s.vertices().contains(v))
            && s.vertices().iter().filter(|v| in_minimal(v)).count() == face.len()
    });
    (shares_face && minimal != 0).then_some(union)
}

fn r_th_branches() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let unions = admissible_unions(&mut rng, 100);
    let mut branches = 0;
    let mut multi = 0;
    for (i, (n, simplices)) in unions.iter().enumerate() {
        let r = rng.gen_range(2..=3usize);
        let d: Vec<u64> = (0..r).map(|_| rng.gen_range(1..=3)).collect();
        let tuple = DegreeTuple::new(d.clone()).unwrap();
        let check = r_newton_branches(simplices, &tuple).map_err(|e| format!("#{i}: {e}"))?;
        let minimal = simplices
            .iter()
            .map(|s| common::minimal_full_supporting(*n, s))
            .fold(usize::MAX, |a, b| a & b);
        let vols = common::factorial_volumes(*n, simplices);
        let restricted: Q = (0..1usize << n)
            .filter(|&j| j & minimal == minimal && j.count_ones() as usize >= r)
            .map(|j| {
                let s = j.count_ones() as usize;
                let sign = if (n - s).is_multiple_of(2) { q(1) } else { q(-1) };
                sign * Q::from_integer(common::f_weight(s, &d)) * &vols[j]
            })
            .sum();
        ensure(check.minimal_i.mask() as usize == minimal, || format!("#{i}: minimal subspace"))?;
        ensure(check.restricted_sum == restricted, || format!("#{i}: restricted sum"))?;
        for b in &check.branches {
            ensure(b.value == restricted, || {
                format!("#{i} n={n} r={r} d={d:?} I={}: branch {} gives {} not {restricted}", check.minimal_i, b.branch, b.value)
            })?;
        }
        branches += check.branches.len();
        multi += usize::from(simplices.len() > 1);
    }
    Ok(format!("100 unions ({multi} multi-simplex), {branches} branch evaluations"))
}

fn reduction(seen: &mut Seen) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let ones = DegreeTuple::ones(1).unwrap();
    for i in 0..100 {
        let n = rng.gen_range(1..=4);
        let s = common::random_convenient_support(&mut rng, n, 6, 3);
        let region = gamma_minus(&s).map_err(|e| e.to_string())?;
        let value = nu_of(&region)?;
        let r1 = r_newton_number(&region, &ones).map_err(|e| e.to_string())?.total;
        ensure(value == r1 && value == common::region_nu(&region), || format!("#{i}: {value} vs {r1}"))?;
        seen.record(&region, &value);
    }
    Ok("100 supports".into())
}

fn monotonicity(seen: &mut Seen) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut r_checks = 0;
    for i in 0..100 {
        let n = rng.gen_range(1..=4);
        let big = common::random_convenient_support(&mut rng, n, 7, 2);
        let extra: Vec<Vec<u32>> = (0..rng.gen_range(1..=3))
            .map(|_| (0..n).map(|_| rng.gen_range(0..=3)).collect())
            .filter(|p: &Vec<u32>| p.iter().any(|&c| c > 0) && !big.contains(p))
            .collect();
        let mut extra = extra;
        extra.sort();
        extra.dedup();
        let small = big.with_points(extra).map_err(|e| e.to_string())?;
        let x = gamma_minus(&big).map_err(|e| e.to_string())?;
        let y = gamma_minus(&small).map_err(|e| e.to_string())?;
        let (nx, ny) = (nu_of(&x)?, nu_of(&y)?);
        ensure(nx >= ny && ny >= Q::zero(), || format!("#{i}: nu {nx} < {ny}"))?;
        for r in 1..=n {
            let d: Vec<u64> = (0..r).map(|_| rng.gen_range(1..=3)).collect();
            let tuple = DegreeTuple::new(d.clone()).unwrap();
            let rx = r_newton_number(&x, &tuple).map_err(|e| e.to_string())?.total;
            let ry = r_newton_number(&y, &tuple).map_err(|e| e.to_string())?.total;
            ensure(rx == common::r_nu(n, x.simplices(), &d), || format!("#{i}: oracle nu^r"))?;
            ensure(rx >= ry && ry >= Q::zero(), || format!("#{i}: r={r} d={d:?}: {rx} < {ry}"))?;
            r_checks += 1;
        }
        seen.record(&x, &nx);
        seen.record(&y, &ny);
    }
    Ok(format!("100 pairs, {r_checks} r-th checks"))
}

fn vanishing(seen: &Seen) -> Outcome {
    let mut zeros = 0;
    for (region, value) in &seen.regions {
        if !value.is_zero() {
            continue;
        }
        zeros += 1;
        let n = region.n();
        let has_unit = (0..n).any(|j| {
            let e = Point::unit(n, j);
            region.simplices().iter().any(|s| s.vertices().contains(&e))
        });
        ensure(has_unit, || format!("nu = 0 without a unit vertex: {:?}", region.simplices()))?;
        let verdict = vanishing_check(region, None).map_err(|e| e.to_string())?;
        ensure(verdict.condition_i_holds && verdict.consistent, || format!("verdict {verdict:?}"))?;
    }
    Ok(format!("{} regions, {zeros} with nu = 0", seen.regions.len()))
}

fn oracle_checks() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..50 {
        let n = rng.gen_range(1..=3);
        let s = common::random_convenient_support(&mut rng, n, 5, 2);
        let region = gamma_minus(&s).map_err(|e| e.to_string())?;
        let triangulated: Q = region.simplices().iter().map(|s| s.normalized_volume()).sum::<Q>()
            / Q::from_integer((1..=n).product::<usize>().into());
        let vols = common::factorial_volumes(n, region.simplices());
        let oracle = &vols[(1 << n) - 1] / Q::from_integer((1..=n).product::<usize>().into());
        let ehrhart = ehrhart_volume(&region).map_err(|e| e.to_string())?;
        ensure(ehrhart == triangulated && ehrhart == oracle, || format!("#{i}: {ehrhart} vs {triangulated}"))?;
    }
    let mut supports: Vec<SupportSet> = fixtures()
        .iter()
        .flat_map(|f| {
            let s = parse_polynomial(&f.text).unwrap().support;
            let f0 = s.without(&f.vertex).unwrap();
            [s, f0]
        })
        .collect();
    for p in 2..=7 {
        supports.push(parse_polynomial(&format!("x^{p}+y^{}", 9 - p)).unwrap().support);
    }
    supports.push(SupportSet::from_points(3, vec![vec![3, 0, 0], vec![0, 3, 0], vec![0, 0, 3]]).unwrap());
    for s in &supports {
        let canonical = common::region_nu(&gamma_minus(s).map_err(|e| e.to_string())?);
        for seed in 0..20 {
            let shuffled = shuffled_newton_number(s, seed).map_err(|e| e.to_string())?;
            ensure(shuffled == canonical, || format!("seed {seed}: {shuffled} != {canonical}"))?;
        }
    }
    let y3 = shuffled_newton_number(&supports[supports.len() - 1], 1).map_err(|e| e.to_string())?;
    ensure(y3 == q(8), || format!("Y_3 in R^3 gives {y3}"))?;
    let d5 = parse_polynomial("x^2*y+y^4").unwrap();
    let poly: Polynomial = d5.polynomial().map_err(|e| e.to_string())?;
    let mu = milnor_colength(&poly).map_err(|e| e.to_string())?;
    let cert = milnor_lower_bound(&d5.support, &[frac(8, 3), q(4)]).map_err(|e| e.to_string())?;
    ensure(mu == 5 && cert.nu_value == q(5) && cert.bound == q(5) && cert.verdict, || {
        format!("mu {mu}, nu(g) {}, bound {}", cert.nu_value, cert.bound)
    })?;
    Ok(format!("50 volumes, {} fixtures x 20 seeds, mu = nu(g) = bound = 5", supports.len()))
}

fn closed_form() -> Outcome {
    let mut cases = 0;
    let mut intercepts: Vec<Vec<Q>> = Vec::new();
    for n in 1..=4usize {
        let mut a = vec![1i64; n];
        loop {
            intercepts.push(a.iter().map(|&x| q(x)).collect());
            let Some(i) = (0..n).find(|&i| a[i] < 5) else { break };
            a[i] += 1;
            for x in a.iter_mut().take(i) {
                *x = 1;
            }
        }
        intercepts.push(vec![frac(5, 2); n]);
    }
    for a in &intercepts {
        let n = a.len();
        let region = NewtonRegion::axis_simplex(a).map_err(|e| e.to_string())?;
        for r in 1..=n {
            let mut d = vec![1u64; r];
            loop {
                let tuple = DegreeTuple::new(d.clone()).unwrap();
                let value = r_newton_number(&region, &tuple).map_err(|e| e.to_string())?.total;
                let mut expected = if (n - r + 1) % 2 == 0 { q(1) } else { q(-1) };
                for s in r..=n {
                    let term = Q::from_integer(common::f_weight(s, &d)) * common::sigma(s, a);
                    expected += if (n - s) % 2 == 0 { term } else { -term };
                }
                let library = r_closed_form(&tuple, a).map_err(|e| e.to_string())?;
                ensure(value == expected && library == expected, || {
                    format!("a={a:?} d={d:?}: {value} vs {expected}")
                })?;
                cases += 1;
                let Some(i) = (0..r).find(|&i| d[i] < 3) else { break };
                d[i] += 1;
                for x in d.iter_mut().take(i) {
                    *x = 1;
                }
            }
        }
        for s in 1..=n {
            for r in 1..=s {
                let w = f_coeff(s, &vec![1; r]).map_err(|e| e.to_string())?;
                ensure(w == common::binomial(s - 1, r - 1), || format!("F^{s}_{r}(1) = {w}"))?;
            }
        }
    }
    Ok(format!("{} regions, {cases} evaluations", intercepts.len()))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut seen = Seen::default();
    let results: Vec<(&str, Outcome)> = vec![
        ("1 simplex law", simplex_law(&mut seen)),
        ("2 Brieskorn equality chain", brieskorn(&mut seen)),
        ("3 truncation fixtures", truncation_fixtures(&mut seen)),
        ("4 factorisation", factorisation()),
        ("5 r-th factorisation branches", r_th_branches()),
        ("6 first Newton number reduction", reduction(&mut seen)),
        ("7 monotonicity and nonnegativity", monotonicity(&mut seen)),
        ("8 vanishing", vanishing(&seen)),
        ("9 oracle cross-checks", oracle_checks()),
        ("10 closed form", closed_form()),
    ];
    let mut failed = 0;
    for (name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed in {:.1?}", results.len() - failed, start.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
