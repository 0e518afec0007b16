use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value as Json};

use super::input::{binomial_arg, coordinate_list, eval_str, integer_list, load_algebra, poly_in};
use super::*;
use crate::arith::{big_pow, mod_floor, require_prime};
use crate::binomial::{adams_trivial_check, BinomialRing, IntValuedPoly};
use crate::delta::{
    delta_commutation, delta_product_law, delta_sum_law, free_delta_basis, psi_equals_phi, BinomialLift, FrobeniusLift,
    IntegerLift, LawReport, PolyLift,
};
use crate::error::Result;
use crate::expr::{Evaluation, Value};
use crate::finite_algebra::FiniteAlgebra;
use crate::fracture::{
    check_perfect, fracture_check_square, fracture_reconstruct, primes_up_to, spherical_homotopy, PerfectRingDesc,
    StemsTable,
};
use crate::lambda::{
    adams_polynomial, filtration_basis, lambda_weight, BigWittElement, BigWittJson, LambdaLimits, LambdaTables,
};
use crate::modular::{IntegerRing, ZMod};
use crate::pboolean::{
    continuous_functions, free_pboolean, from_presentation, group_algebra_model, spec, spec_of_algebra, transport,
    FinitePBooleanRing,
};
use crate::perfection::{limit_perfection, ColimitPerfection, Staged};
use crate::poly::{CoefRing, MultiPoly};
use crate::ring::{CommRing, IntegralLift};
use crate::witt::WittRing;

pub fn dispatch(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Lambda(op) => lambda(op),
        Command::Witt(op) => witt(op),
        Command::Bigwitt(op) => bigwitt(op),
        Command::Perf(op) => perf(op),
        Command::Boolean(op) => boolean(op),
        Command::Binomial(op) => binomial(op),
        Command::Delta(op) => delta(op),
        Command::Fracture(op) => fracture(op),
        Command::Eval { expr } => {
            let e = crate::expr::parse(expr)?;
            let ev = crate::expr::evaluate(&e)?;
            let mut j = Json::from(&ev);
            j["expr"] = json!(e.to_string());
            Ok(Report::ok(j, ev.value.render()))
        }
    }
}

fn tables(limits: &LambdaLimitArgs) -> LambdaTables {
    LambdaTables::from_env().with_limits(LambdaLimits { max_mult: limits.max_j, max_comp: limits.max_ij })
}

fn poly_report(poly: &MultiPoly, meta: Json) -> Report {
    let mut j = poly.to_json_value();
    j["meta"] = meta;
    Report::ok(j, poly.to_string())
}

fn lambda(op: &LambdaOp) -> Result<Report> {
    match op {
        LambdaOp::Mult { j, limits } => {
            let p = tables(limits).mult(*j)?;
            Ok(poly_report(&p.poly, json!({ "j": j })))
        }
        LambdaOp::Comp { j, i, limits } => {
            let p = tables(limits).comp(*j, *i)?;
            Ok(poly_report(&p.poly, json!({ "j": j, "i": i })))
        }
        LambdaOp::Adams { n } => {
            if *n == 0 {
                return Err(Error::InvalidArgument("Adams operations are indexed from 1".into()));
            }
            if *n > 24 {
                return Err(Error::ResourceLimit(format!("psi^{n} exceeds the limit 24")));
            }
            Ok(poly_report(&adams_polynomial(*n)?, json!({ "n": n })))
        }
        LambdaOp::Basis { m, w } => {
            if *m == 0 {
                return Err(Error::InvalidArgument("at least one generator is needed".into()));
            }
            if *m > 8 || *w > 16 {
                return Err(Error::ResourceLimit("basis enumeration is limited to m <= 8, w <= 16".into()));
            }
            let basis = filtration_basis(*m, *w);
            let items: Vec<Json> =
                basis.iter().map(|b| json!({ "monomial": b.to_string(), "weight": lambda_weight(b) })).collect();
            let text = basis.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n");
            Ok(Report::ok(json!({ "m": m, "bound": w, "count": basis.len(), "basis": items }), text))
        }
    }
}

fn witt_coords<R: IntegralLift<Elem = BigInt>>(ring: &WittRing<R>, s: &str) -> Result<Vec<BigInt>> {
    let (coords, p) = integer_list(s)?;
    if let Some(p) = p.filter(|&q| q != ring.p()) {
        return Err(Error::RingMismatch(format!("`{s}` is a Witt vector at p = {p}, expected p = {}", ring.p())));
    }
    if coords.len() != ring.len() {
        return Err(Error::InvalidArgument(format!(
            "`{s}` has {} coordinates, expected n = {}",
            coords.len(),
            ring.len()
        )));
    }
    ring.element(coords.iter().map(|c| ring.base().from_int(c)).collect())
}

fn witt_report<R: IntegralLift<Elem = BigInt>>(ring: &WittRing<R>, base: &str, op: &str, u: &[BigInt]) -> Report {
    let coords: Vec<String> = u.iter().map(ToString::to_string).collect();
    let text = format!("[{}]", coords.join(","));
    Report::ok(json!({ "op": op, "p": ring.p(), "n": u.len(), "base": base, "coords": coords }), text)
}

fn witt_with<R: IntegralLift<Elem = BigInt>>(ring: WittRing<R>, base: &str, op: &WittOp) -> Result<Report> {
    let (name, out) = match op {
        WittOp::Add { u, v, .. } => ("add", ring.try_add(&witt_coords(&ring, u)?, &witt_coords(&ring, v)?)?),
        WittOp::Mul { u, v, .. } => ("mul", ring.try_mul(&witt_coords(&ring, u)?, &witt_coords(&ring, v)?)?),
        WittOp::Frob { u, .. } => ("frob", ring.frobenius(&witt_coords(&ring, u)?)?),
        WittOp::Versch { u, .. } => ("versch", ring.verschiebung(&witt_coords(&ring, u)?, ring.len())?),
        WittOp::Teich { a, .. } => {
            let v = eval_str(a)?;
            let c = crate::expr::eval::as_integer(&v.value)
                .ok_or_else(|| Error::InvalidArgument(format!("`{a}` is not an integer")))?;
            ("teich", ring.teichmuller(&ring.base().from_int(&c)))
        }
        WittOp::Ghost { u, .. } => ("ghost", ring.ghost(&witt_coords(&ring, u)?)?),
    };
    Ok(witt_report(&ring, base, name, &out))
}

fn witt(op: &WittOp) -> Result<Report> {
    let args = match op {
        WittOp::Add { args, .. }
        | WittOp::Mul { args, .. }
        | WittOp::Frob { args, .. }
        | WittOp::Versch { args, .. }
        | WittOp::Teich { args, .. }
        | WittOp::Ghost { args, .. } => args,
    };
    require_prime(args.p)?;
    if args.n == 0 {
        return Err(Error::InvalidArgument("Witt length must be at least 1".into()));
    }
    if args.n > 16 {
        return Err(Error::ResourceLimit(format!("Witt length {} exceeds 16", args.n)));
    }
    match args.base {
        WittBase::Z => witt_with(WittRing::new(IntegerRing, args.p, args.n)?, "Z", op),
        WittBase::Fp => witt_with(WittRing::new(ZMod::new(args.p)?, args.p, args.n)?, "F_p", op),
    }
}

fn bigwitt_arg(n: usize, s: &str) -> Result<BigWittElement> {
    let (coords, _) = coordinate_list(s)?;
    if coords.len() != n {
        return Err(Error::InvalidArgument(format!("`{s}` has {} coefficients, expected N = {n}", coords.len())));
    }
    let ring = if coords.iter().all(|c| c.is_integer()) { CoefRing::Integers } else { CoefRing::Rationals };
    BigWittElement::new(ring, coords)
}

fn bigwitt_report(op: &str, w: &BigWittElement) -> Report {
    let mut j = serde_json::to_value(BigWittJson::from(w)).expect("serializable");
    j["op"] = json!(op);
    Report::ok(j, w.render())
}

fn bigwitt(op: &BigWittOp) -> Result<Report> {
    let n = match op {
        BigWittOp::Add { n, .. }
        | BigWittOp::Mul { n, .. }
        | BigWittOp::Lambda { n, .. }
        | BigWittOp::Ghost { n, .. } => *n,
    };
    if n == 0 {
        return Err(Error::InvalidArgument("N must be at least 1".into()));
    }
    let tables = LambdaTables::from_env();
    match op {
        BigWittOp::Add { u, v, .. } => Ok(bigwitt_report("add", &bigwitt_arg(n, u)?.add(&bigwitt_arg(n, v)?)?)),
        BigWittOp::Mul { u, v, .. } => {
            Ok(bigwitt_report("mul", &bigwitt_arg(n, u)?.mul_with(&bigwitt_arg(n, v)?, &tables)?))
        }
        BigWittOp::Lambda { k, out, u, .. } => {
            Ok(bigwitt_report("lambda", &bigwitt_arg(n, u)?.lambda_with(*k, *out, &tables)?))
        }
        BigWittOp::Ghost { u, .. } => {
            let w = bigwitt_arg(n, u)?;
            let gh: Vec<String> = w.ghost()?.iter().map(ToString::to_string).collect();
            let text = format!("[{}]", gh.join(","));
            Ok(Report::ok(json!({ "op": "ghost", "N": n, "ghost": gh }), text))
        }
    }
}

fn staged_arg(perf: &ColimitPerfection, s: &str) -> Result<Staged> {
    let (body, stage) = match s.rsplit_once('@') {
        Some((b, k)) if !b.trim_end().ends_with(']') => {
            let k = k.trim().parse::<u32>().map_err(|_| Error::InvalidArgument(format!("bad stage in `{s}`")))?;
            (b, k)
        }
        _ => (s, 0),
    };
    let f = poly_in(body, perf.vars())?;
    perf.root(&f, stage)
}

fn staged_json(perf: &ColimitPerfection, x: &Staged) -> Result<Json> {
    let monoid = perf.monoid_algebra();
    let m = perf.to_monoid(x)?;
    Ok(json!({
        "rep": x.rep.to_string(),
        "stage": x.stage,
        "text": perf.render(x),
        "monoid": monoid.render(&m),
        "monoid_json": serde_json::to_value(monoid.to_json(&m)).expect("serializable"),
    }))
}

fn perf(op: &PerfOp) -> Result<Report> {
    match op {
        PerfOp::Colim { p, vars, op, a, b } => {
            let perf = ColimitPerfection::new(*p, vars)?;
            let x = staged_arg(&perf, a)?;
            let needs_b = matches!(op, ColimOp::Add | ColimOp::Mul);
            let y = match (b, needs_b) {
                (Some(b), true) => Some(staged_arg(&perf, b)?),
                (None, true) => return Err(Error::InvalidArgument("this operation takes two elements".into())),
                (Some(_), false) => return Err(Error::InvalidArgument("this operation takes one element".into())),
                (None, false) => None,
            };
            let result = match op {
                ColimOp::Show => x.clone(),
                ColimOp::Add => perf.add(&x, y.as_ref().expect("checked")),
                ColimOp::Mul => perf.mul(&x, y.as_ref().expect("checked")),
                ColimOp::Frob => perf.frobenius(&x),
                ColimOp::FrobInv => perf.frobenius_inverse(&x),
            };
            let round_trip = perf.frobenius(&perf.frobenius_inverse(&result)) == result
                && perf.frobenius_inverse(&perf.frobenius(&result)) == result;
            let mut j = staged_json(&perf, &result)?;
            j["p"] = json!(p);
            j["vars"] = json!(vars);
            j["frobenius_bijective_on_result"] = json!(round_trip);
            let text = format!("{}\n= {}", perf.render(&result), j["monoid"].as_str().unwrap_or_default());
            Ok(Report { json: j, text, ok: round_trip })
        }
        PerfOp::Lim { p, modulus, algebra, product, stage } => {
            let chosen = [modulus.is_some(), algebra.is_some(), product.is_some()].iter().filter(|b| **b).count();
            if chosen != 1 {
                return Err(Error::InvalidArgument("give exactly one of --modulus, --algebra, --product".into()));
            }
            let r = if let Some(path) = algebra {
                load_algebra(path)?
            } else {
                let p = p.ok_or_else(|| Error::InvalidArgument("-p is required".into()))?;
                if let Some(n) = product {
                    FiniteAlgebra::product(p, 1, *n)?
                } else {
                    let f = modulus.as_deref().expect("chosen");
                    let ev = eval_str(f)?;
                    let var = ev.free_variables.first().cloned().unwrap_or_else(|| "t".into());
                    let g = poly_in(f, std::slice::from_ref(&var))?;
                    let coeffs = monic_coefficients(&g, p)?;
                    FiniteAlgebra::truncated_polynomial(p, 1, &coeffs, &var)?
                }
            };
            let lp = limit_perfection(&r, *stage)?;
            let basis: Vec<String> = lp.embedding.iter().map(|v| r.render(v)).collect();
            let bijective = lp.algebra.frobenius_is_bijective()?;
            let j = json!({
                "p": r.p(),
                "input_dim": r.dim(),
                "dim": lp.algebra.dim(),
                "basis": basis,
                "dimensions": lp.dimensions,
                "stage": lp.stage,
                "stabilization_index": lp.stabilization_index,
                "exact": lp.exact,
                "frobenius_bijective": bijective,
                "algebra": serde_json::to_value(lp.algebra.to_json()).expect("serializable"),
            });
            let text = format!(
                "perfection of dimension {} spanned by {}\nimage dimensions {:?}, stabilization index {}",
                lp.algebra.dim(),
                basis.join(", "),
                lp.dimensions,
                lp.stabilization_index.map_or("not reached".to_string(), |k| k.to_string())
            );
            Ok(Report::ok(j, text))
        }
    }
}

fn monic_coefficients(f: &MultiPoly, p: u64) -> Result<Vec<i64>> {
    let d = f.total_degree() as usize;
    let pb = BigInt::from(p);
    let mut coeffs = vec![BigInt::zero(); d + 1];
    for (m, c) in f.terms() {
        let num = crate::arith::rational_mod(c, &pb)
            .ok_or_else(|| Error::InvalidArgument(format!("coefficient {c} is not defined mod {p}")))?;
        coeffs[m.exps().first().copied().unwrap_or(0) as usize] = num;
    }
    let lead = coeffs[d].clone();
    let inv = crate::arith::mod_inverse(&lead, &pb)
        .ok_or_else(|| Error::InvalidArgument(format!("leading coefficient of {f} vanishes mod {p}")))?;
    Ok(coeffs.iter().map(|c| i64::try_from(mod_floor(&(c * &inv), &pb)).expect("residue below p")).collect())
}

fn pboolean_json(r: &FinitePBooleanRing) -> Json {
    let gens: BTreeMap<String, Vec<u64>> = r.generators().iter().cloned().collect();
    json!({
        "p": r.p(),
        "points": r.points(),
        "dim": r.dim(),
        "order": r.order().to_string(),
        "generators": gens,
    })
}

fn pboolean_text(r: &FinitePBooleanRing) -> String {
    let mut s = format!("F_{}^{} (order {}) on points {}", r.p(), r.dim(), r.order(), r.points().join(" "));
    for (name, values) in r.generators() {
        let vs: Vec<String> = values.iter().map(ToString::to_string).collect();
        s.push_str(&format!("\n{name} = ({})", vs.join(", ")));
    }
    s
}

fn presented(pres: &PresentationArgs) -> Result<FinitePBooleanRing> {
    if pres.gens.is_empty() {
        return Err(Error::InvalidArgument("--gens is required".into()));
    }
    let rels = pres.relations.iter().map(|r| poly_in(r, &pres.gens)).collect::<Result<Vec<_>>>()?;
    from_presentation(pres.p, &pres.gens, &rels)
}

fn boolean(op: &BooleanOp) -> Result<Report> {
    match op {
        BooleanOp::Free { p, n } => {
            let r = free_pboolean(*p, *n)?;
            Ok(Report::ok(pboolean_json(&r), pboolean_text(&r)))
        }
        BooleanOp::Spec { pres, algebra } => {
            let points = if let Some(path) = algebra {
                let a = load_algebra(path)?;
                spec_of_algebra(&a)?
                    .iter()
                    .map(|c| format!("({})", c.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
                    .collect()
            } else {
                spec(&presented(pres)?)?
            };
            let text = points.join("\n");
            Ok(Report::ok(json!({ "points": points, "count": points.len() }), text))
        }
        BooleanOp::Transport { p, to, points } => {
            if points.is_empty() {
                return Err(Error::InvalidArgument("--points is required".into()));
            }
            let r = continuous_functions(points, *p)?;
            let t = transport(&r, *to)?;
            let back = transport(&t, *p)? == r;
            let mut j = pboolean_json(&t);
            j["round_trip"] = json!(back);
            Ok(Report { json: j, text: pboolean_text(&t), ok: back })
        }
        BooleanOp::Solve { pres } => {
            let r = presented(pres)?;
            Ok(Report::ok(pboolean_json(&r), pboolean_text(&r)))
        }
        BooleanOp::Group { p, n } => {
            let rep = group_algebra_model(*p, *n)?;
            let j = serde_json::to_value(&rep).expect("serializable");
            let text = format!(
                "group algebra F_{p}[(Z/{p})^{n}] isomorphic to the free ring: {}\nfunction algebra on (Z/{p})^{n} isomorphic to the free ring: {}",
                rep.group_algebra_isomorphic, rep.function_algebra_isomorphic
            );
            Ok(Report::ok(j, text))
        }
    }
}

fn binom_report(f: &IntValuedPoly, extra: Json) -> Report {
    let mut j = serde_json::to_value(f.to_json()).expect("serializable");
    j["text"] = json!(f.to_string());
    j["monomial"] = json!(f.to_monomial().to_string());
    if let Json::Object(m) = extra {
        for (k, v) in m {
            j[k] = v;
        }
    }
    Report::ok(j, f.to_string())
}

fn binomial(op: &BinomialOp) -> Result<Report> {
    match op {
        BinomialOp::Convert { f } => Ok(binom_report(&binomial_arg(f)?, json!({}))),
        BinomialOp::Mul { f, g } => {
            Ok(binom_report(&BinomialRing.mul(&binomial_arg(f)?, &binomial_arg(g)?), json!({})))
        }
        BinomialOp::Lambda { n, f } => Ok(binom_report(&binomial_arg(f)?.lambda(*n)?, json!({ "n": n }))),
        BinomialOp::AdamsCheck { k, f } => {
            let rep = adams_trivial_check(*k, &binomial_arg(f)?)?;
            let text =
                format!("psi^{}({}) = {}: {}", rep.k, rep.input, rep.adams, if rep.pass { "pass" } else { "fail" });
            Ok(Report { json: serde_json::to_value(&rep).expect("serializable"), text, ok: rep.pass })
        }
        BinomialOp::Comul { f } => {
            let t = binomial_arg(f)?.hilbert_comul();
            let terms: Vec<Json> =
                t.terms().iter().map(|(a, b, c)| json!({ "a": a, "b": b, "coef": c.to_string() })).collect();
            Ok(Report::ok(json!({ "terms": terms, "text": t.to_string() }), t.to_string()))
        }
    }
}

fn law_json(r: &LawReport) -> Json {
    serde_json::to_value(r).expect("serializable")
}

fn laws_report(reports: Vec<LawReport>) -> Report {
    let ok = reports.iter().all(|r| r.pass);
    let text = reports
        .iter()
        .map(|r| format!("{}: {} ({} vs {})", r.law, if r.pass { "pass" } else { "fail" }, r.lhs, r.rhs))
        .collect::<Vec<_>>()
        .join("\n");
    Report { json: json!({ "pass": ok, "laws": reports.iter().map(law_json).collect::<Vec<_>>() }), text, ok }
}

/// Both arguments in a common ring: binomial if either is, else integers or polynomials.
enum DeltaArgs {
    Binomial(Vec<IntValuedPoly>),
    Poly(Vec<MultiPoly>, Vec<String>),
}

fn delta_args(args: &[&str]) -> Result<DeltaArgs> {
    let evs = args.iter().map(|a| eval_str(a)).collect::<Result<Vec<Evaluation>>>()?;
    if evs.iter().any(|e| matches!(e.value, Value::Binomial(_))) {
        return Ok(DeltaArgs::Binomial(args.iter().map(|a| binomial_arg(a)).collect::<Result<_>>()?));
    }
    let mut vars: Vec<String> = evs.iter().flat_map(|e| e.free_variables.clone()).collect();
    vars.sort_by(|a, b| crate::poly::var_cmp(a, b));
    vars.dedup();
    let polys = evs
        .into_iter()
        .map(|e| match e.value {
            Value::Poly(f) => {
                if f.terms().any(|(_, c)| !c.is_integer()) {
                    return Err(Error::Rejected(format!("{f} does not have integer coefficients")));
                }
                f.trim_vars().with_vars(&vars)?.change_ring(CoefRing::Integers)
            }
            v => Err(Error::Unsupported(format!("delta-structures are not defined on a {}", v.kind()))),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DeltaArgs::Poly(polys, vars))
}

fn delta_eval<L: FrobeniusLift>(lift: &L, x: &<L::Ring as CommRing>::Elem, structure: &str) -> Result<Report> {
    let r = lift.ring();
    let d = lift.delta(x)?;
    let j = json!({
        "p": lift.p(),
        "structure": structure,
        "x": r.render(x),
        "phi": r.render(&lift.phi(x)),
        "delta": r.render(&d),
        "psi": r.render(&lift.psi(x)?),
    });
    Ok(Report::ok(j, r.render(&d)))
}

fn delta(op: &DeltaOp) -> Result<Report> {
    match op {
        DeltaOp::Eval { p, x } => match delta_args(&[x])? {
            DeltaArgs::Binomial(v) => delta_eval(&BinomialLift::identity(*p, 1)?, &v[0], "phi = id on Z(x choose *)"),
            DeltaArgs::Poly(v, vars) if vars.is_empty() => {
                let n = v[0].constant_value().map(|c| c.to_integer()).unwrap_or_default();
                delta_eval(&IntegerLift::new(*p)?, &n, "phi = id on Z")
            }
            DeltaArgs::Poly(v, vars) => {
                delta_eval(&PolyLift::canonical(*p, &vars)?, &v[0], "phi(v) = v^p on each variable")
            }
        },
        DeltaOp::Laws { p, x, y } => {
            let reports = match delta_args(&[x, y])? {
                DeltaArgs::Binomial(v) => {
                    let window = v.iter().filter_map(|f| f.degree()).max().unwrap_or(1).max(1);
                    let lift = BinomialLift::identity(*p, window)?;
                    vec![
                        delta_sum_law(&lift, &v[0], &v[1])?,
                        delta_product_law(&lift, &v[0], &v[1])?,
                        psi_equals_phi(&lift, &v[0])?,
                        psi_equals_phi(&lift, &v[1])?,
                    ]
                }
                DeltaArgs::Poly(v, vars) => {
                    let lift = PolyLift::canonical(*p, &vars)?;
                    vec![
                        delta_sum_law(&lift, &v[0], &v[1])?,
                        delta_product_law(&lift, &v[0], &v[1])?,
                        psi_equals_phi(&lift, &v[0])?,
                        psi_equals_phi(&lift, &v[1])?,
                    ]
                }
            };
            Ok(laws_report(reports))
        }
        DeltaOp::Commute { p, l, degree } => {
            if *degree > 12 {
                return Err(Error::ResourceLimit(format!("degree {degree} exceeds 12")));
            }
            Ok(laws_report(vec![delta_commutation(*p, *l, *degree)?]))
        }
        DeltaOp::Basis { depth, degree } => {
            let basis = free_delta_basis(*depth, *degree)?;
            let labels: Vec<String> = basis.iter().map(ToString::to_string).collect();
            Ok(Report::ok(
                json!({ "depth": depth, "degree": degree, "count": labels.len(), "basis": labels }),
                labels.join("\n"),
            ))
        }
    }
}

fn ring_desc(args: &RingArgs) -> Result<PerfectRingDesc> {
    let desc = match args.ring {
        RingKind::Integers => PerfectRingDesc::Integers,
        RingKind::Binomial => PerfectRingDesc::Binomial { degree: args.window },
        RingKind::Polynomial => PerfectRingDesc::Polynomial { degree: args.window },
        RingKind::Monoid => PerfectRingDesc::MonoidAlgebra {
            p: args.monoid_prime,
            depth: u32::try_from(args.window).map_err(|_| Error::ResourceLimit("window too large".into()))?,
        },
        RingKind::Finite => {
            let path =
                args.algebra.as_ref().ok_or_else(|| Error::InvalidArgument("--ring finite needs --algebra".into()))?;
            PerfectRingDesc::FinitePerfect { algebra: load_algebra(path)? }
        }
    };
    desc.validate()?;
    Ok(desc)
}

fn prime_list(args: &PrimeArgs) -> Result<Vec<u64>> {
    let primes = if args.primes.is_empty() { primes_up_to(args.max_prime) } else { args.primes.clone() };
    for &p in &primes {
        require_prime(p)?;
    }
    if primes.len() > 64 {
        return Err(Error::ResourceLimit("at most 64 primes".into()));
    }
    Ok(primes)
}

/// Rational coordinates (`[c0,...]`) or an expression in `x`, read in `labels` order.
fn rational_coords(desc: &PerfectRingDesc, s: &str, size: usize) -> Result<Vec<BigRational>> {
    if s.trim_start().starts_with('[') {
        let (c, _) = coordinate_list(s)?;
        if c.len() != size {
            return Err(Error::InvalidArgument(format!("`{s}` has {} coordinates, the window has {size}", c.len())));
        }
        return Ok(c);
    }
    let ev = eval_str(s)?;
    let f = match (&ev.value, desc) {
        (Value::Binomial(b), _) => b.to_monomial(),
        (Value::Poly(f), PerfectRingDesc::Integers) if f.is_constant() => f.trim_vars(),
        (Value::Poly(_), PerfectRingDesc::Binomial { .. } | PerfectRingDesc::Polynomial { .. }) => {
            poly_in(s, &["x".to_string()])?.change_ring(CoefRing::Rationals)?
        }
        _ => {
            return Err(Error::InvalidArgument(format!(
                "`{s}` cannot be read in this ring; give coordinates as [c0,c1,...]"
            )))
        }
    };
    if f.total_degree() as usize >= size {
        return Err(Error::InvalidArgument(format!("`{s}` has degree {} beyond the window", f.total_degree())));
    }
    let mut out = vec![BigRational::zero(); size];
    for (m, c) in f.terms() {
        out[m.exps().first().copied().unwrap_or(0) as usize] = c.clone();
    }
    Ok(out)
}

fn padic_coords(desc: &PerfectRingDesc, s: &str, size: usize) -> Result<Vec<BigInt>> {
    let coords = if s.trim_start().starts_with('[') {
        let (c, _) = integer_list(s)?;
        c
    } else if let PerfectRingDesc::Binomial { .. } = desc {
        binomial_arg(s)?.coeffs().to_vec()
    } else {
        rational_coords(desc, s, size)?
            .into_iter()
            .map(|q| {
                if q.is_integer() {
                    Ok(q.to_integer())
                } else {
                    Err(Error::InvalidArgument(format!("{q} is not an integer")))
                }
            })
            .collect::<Result<Vec<_>>>()?
    };
    if coords.len() > size {
        return Err(Error::InvalidArgument(format!("`{s}` has {} coordinates, the window has {size}", coords.len())));
    }
    let mut out = coords;
    out.resize(size, BigInt::zero());
    Ok(out)
}

fn fracture(op: &FractureOp) -> Result<Report> {
    match op {
        FractureOp::Reconstruct { ring, rational, padic, precision } => {
            let desc = ring_desc(ring)?;
            let w = desc.window()?;
            let q = rational_coords(&desc, rational, w.rational_basis.len())?;
            let mut data = BTreeMap::new();
            for entry in padic {
                let (p, elem) = entry
                    .split_once('=')
                    .ok_or_else(|| Error::InvalidArgument(format!("--padic expects p=ELEMENT, got `{entry}`")))?;
                let p: u64 = p.trim().parse().map_err(|_| Error::InvalidArgument(format!("bad prime in `{entry}`")))?;
                require_prime(p)?;
                let modulus = big_pow(p, *precision);
                let coords = padic_coords(&desc, elem, w.basis.len())?.iter().map(|c| mod_floor(c, &modulus)).collect();
                if data.insert(p, coords).is_some() {
                    return Err(Error::InvalidArgument(format!("{p}-adic data given twice")));
                }
            }
            let r = fracture_reconstruct(&desc, &q, &data, *precision)?;
            let mut j = serde_json::to_value(&r).expect("serializable");
            j["precision"] = json!(precision);
            j["ring"] = json!(desc.to_string());
            let (text, ok) = match &r {
                crate::fracture::Reconstruction::Integral { element, .. } => (element.clone(), true),
                crate::fracture::Reconstruction::Obstructed { prime, coordinate, value, reason } => {
                    (format!("obstructed at p = {prime}: coordinate {coordinate} = {value}: {reason}"), false)
                }
            };
            Ok(Report { json: j, text, ok })
        }
        FractureOp::Check { ring, primes, precision } => {
            let desc = ring_desc(ring)?;
            let cert = fracture_check_square(&desc, &prime_list(primes)?, *precision)?;
            let mut text = format!(
                "{}\nbasis: {}\nprimes: {:?}, precision {}",
                cert.ring,
                cert.basis.join(", "),
                cert.primes,
                cert.precision
            );
            for c in &cert.checks {
                text.push_str(&format!("\n{}: {} ({})", c.name, if c.pass { "pass" } else { "fail" }, c.detail));
            }
            text.push_str(&format!("\nverdict: {}", if cert.pass { "pass" } else { "fail" }));
            if let Some(w) = &cert.witness {
                text.push_str(&format!("\nwitness: {w}"));
            }
            Ok(Report { json: serde_json::to_value(&cert).expect("serializable"), text, ok: cert.pass })
        }
        FractureOp::Perfect { ring, primes } => {
            let desc = ring_desc(ring)?;
            let rep = check_perfect(&desc, &prime_list(primes)?)?;
            let mut text = rep.ring.clone();
            for v in &rep.verdicts {
                text.push_str(&format!("\np = {}: {}", v.p, if v.pass { "perfect" } else { "not perfect" }));
                if let Some(w) = &v.witness {
                    text.push_str(&format!(" ({w})"));
                }
            }
            Ok(Report { json: serde_json::to_value(&rep).expect("serializable"), text, ok: rep.pass })
        }
        FractureOp::Homotopy { ring, degree, stems } => {
            let desc = ring_desc(ring)?;
            let table = match stems {
                Some(path) => StemsTable::load(path)?,
                None => StemsTable::bundled(),
            };
            let g = spherical_homotopy(&desc, *degree, &table)?;
            let mut text = format!("pi_{} = {}", g.degree, g.render());
            for s in &g.summands {
                text.push_str(&format!("\n{}: {}", s.label, s.basis.join(", ")));
            }
            Ok(Report::ok(serde_json::to_value(&g).expect("serializable"), text))
        }
    }
}
