use std::fmt::Write as _;
use std::path::Path;

use ietlab::dynamics::{
    bp_growth, decompose, orbit, pl_normalize, rate_count, rate_estimate, GrowthVerdict,
    MinimalStatus,
};
use ietlab::groups::{
    ball_growth, builtin, commutator, ell_morphism, free_up_to, relation_check, Builtin,
    BuiltinGroup, BuiltinParams, FreeVerdict, GeneratorSet, Word,
};
use ietlab::iet::Iet;
use ietlab::numfield::{Field, Preset};
use ietlab::parse::{
    gn_text, iet_text, parse_document, parse_field, parse_number, parse_word, Document,
};
use ietlab::perm::{generated_group, Perm};
use ietlab::random::{number_below, rng_from_seed};
use ietlab::saf::{saf_distinguish, saf_invariant, SafValue};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::encode;
use crate::{Cli, Command, MapInput, Report};

type Res = Result<Report, String>;

pub fn run(cli: &Cli) -> Res {
    let field = cli
        .field
        .as_deref()
        .map(parse_field)
        .transpose()
        .map_err(|e| format!("--field: {e}"))?;
    let field = field.as_ref();
    match &cli.command {
        Command::Eval { input, x } => eval(&load_map(input, field)?, x),
        Command::Compose { iet, word } => compose(&load(iet, field)?, word),
        Command::Orbit {
            input,
            x,
            length,
            depth,
        } => orbit_cmd(&load_map(input, field)?, x, *length, *depth),
        Command::Decompose { input, depth } => decompose_cmd(&load_map(input, field)?, *depth),
        Command::Growth { input, length } => growth(&load_map(input, field)?, *length),
        Command::Ball { gens, depth } => ball(&load_gens(gens, field)?, *depth),
        Command::Free {
            gens,
            depth,
            periodic,
        } => free(&load_gens(gens, field)?, *depth, *periodic),
        Command::Verify {
            builtin,
            params,
            length,
            seed,
        } => verify(builtin, field, params, *length, *seed),
        Command::Saf { input, against } => saf(input, field, against.as_deref()),
        Command::Normalize { input } => normalize(&load_map(input, field)?),
    }
}

fn load(path: &Path, field: Option<&Field>) -> Result<Document, String> {
    let src = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_document(&src, field).map_err(|e| format!("{}: {e}", path.display()))
}

fn pick<'a>(
    doc: &'a Document,
    name: Option<&str>,
    path: &Path,
) -> Result<(&'a str, &'a Iet), String> {
    let found = match name {
        Some(n) => doc.maps.iter().find(|(m, _)| m == n),
        None => doc.maps.last(),
    };
    found
        .map(|(n, f)| (n.as_str(), f))
        .ok_or_else(|| match name {
            Some(n) => format!("{}: no map named '{n}'", path.display()),
            None => format!("{}: no maps declared", path.display()),
        })
}

fn load_map(input: &MapInput, field: Option<&Field>) -> Result<Iet, String> {
    let doc = load(&input.iet, field)?;
    pick(&doc, input.map.as_deref(), &input.iet).map(|(_, f)| f.clone())
}

fn load_gens(path: &Path, field: Option<&Field>) -> Result<GeneratorSet, String> {
    load(path, field)?
        .generator_set()
        .map_err(|e| format!("{}: {e}", path.display()))
}

fn point(f: &Iet, x: &str) -> Result<ietlab::numfield::AlgebraicNumber, String> {
    parse_number(f.field(), x).map_err(|e| format!("--x: {e}"))
}

fn ok(text: String, json: Value) -> Res {
    Ok(Report {
        text,
        json,
        ok: true,
    })
}

fn eval(f: &Iet, x: &str) -> Res {
    let x = point(f, x)?;
    let y = f.evaluate(&x).map_err(|e| e.to_string())?;
    ok(
        format!("f({x}) = {y}\n"),
        json!({ "command": "eval", "x": encode::number(&x), "value": encode::number(&y) }),
    )
}

fn compose(doc: &Document, word: &str) -> Res {
    let w = parse_word(word).map_err(|e| format!("--word: {e}"))?;
    let gens = GeneratorSet::new(doc.maps.clone()).map_err(|e| e.to_string())?;
    let f = gens.evaluate(&w).map_err(|e| e.to_string())?;
    ok(
        format!("{w} =\n{}{}\n", encode::iet_table(&f), iet_text(&f)),
        json!({ "command": "compose", "word": w.to_string(), "iet": encode::iet(&f) }),
    )
}

fn orbit_cmd(f: &Iet, x: &str, length: usize, depth: Option<usize>) -> Res {
    let x = point(f, x)?;
    let o = orbit(f, &x, length).map_err(|e| e.to_string())?;
    let mut text = String::new();
    for (k, p) in o.points.iter().enumerate() {
        writeln!(text, "{k:>4}  {p}").expect("string");
    }
    match o.period {
        Some(p) => writeln!(text, "period {p}"),
        None => writeln!(text, "no return within {length} steps"),
    }
    .expect("string");
    let mut report = json!({
        "command": "orbit",
        "points": encode::numbers(&o.points),
        "period": o.period,
    });
    if let Some(n) = depth {
        let count = rate_count(f, &x, n).map_err(|e| e.to_string())?;
        let rate = rate_estimate(f, &x, n).map_err(|e| e.to_string())?;
        writeln!(
            text,
            "discontinuities along the orbit to depth {n}: {count} (rate {rate})"
        )
        .expect("string");
        report["rate"] = json!({ "depth": n, "count": count, "estimate": rate.to_string() });
    }
    ok(text, report)
}

fn decompose_cmd(f: &Iet, depth: usize) -> Res {
    let r = decompose(f, depth);
    let mut text = String::from("kind      detail      set\n");
    let mut periodic = Vec::new();
    for (set, p) in &r.periodic {
        writeln!(text, "periodic  period {p:<4} {}", encode::set_text(set)).expect("string");
        periodic.push(json!({ "set": encode::interval_set(set), "period": p }));
    }
    let mut minimal = Vec::new();
    for (set, status) in &r.minimal {
        let s = match status {
            MinimalStatus::Certified => "certified".to_string(),
            MinimalStatus::Heuristic(d) => format!("heuristic to depth {d}"),
        };
        writeln!(text, "minimal   {s:<11} {}", encode::set_text(set)).expect("string");
        minimal.push(json!({ "set": encode::interval_set(set), "status": s }));
    }
    if !r.residual.is_empty() {
        writeln!(
            text,
            "residual              {}",
            encode::set_text(&r.residual)
        )
        .expect("string");
    }
    ok(
        text,
        json!({
            "command": "decompose",
            "depth": depth,
            "periodic": periodic,
            "minimal": minimal,
            "residual": encode::interval_set(&r.residual),
        }),
    )
}

fn verdict_text(v: &GrowthVerdict) -> String {
    match v {
        GrowthVerdict::Bounded(b) => format!("bounded at {b}"),
        GrowthVerdict::Growing => "growing".into(),
        GrowthVerdict::Inconclusive => "inconclusive".into(),
    }
}

fn growth(f: &Iet, length: usize) -> Res {
    let g = bp_growth(f, length.max(1));
    let mut text = String::from("   k  #BP(f^k)\n");
    for (k, c) in g.counts.iter().enumerate() {
        writeln!(text, "{:>4}  {c}", k + 1).expect("string");
    }
    let verdict = verdict_text(&g.verdict);
    writeln!(text, "verdict: {verdict}").expect("string");
    ok(
        text,
        json!({ "command": "growth", "counts": g.counts, "verdict": verdict }),
    )
}

fn ball(gens: &GeneratorSet, depth: usize) -> Res {
    let sizes = ball_growth(gens, depth);
    let mut text = String::from("   L  |B(L)|\n");
    for (l, s) in sizes.iter().enumerate() {
        writeln!(text, "{:>4}  {s}", l + 1).expect("string");
    }
    ok(text, json!({ "command": "ball", "sizes": sizes }))
}

fn free_json(v: &FreeVerdict) -> Value {
    match v {
        FreeVerdict::FreeUpTo(l) => json!({ "free_up_to": l }),
        FreeVerdict::FixedPoint { word, fixed } => {
            json!({ "fixed_point": { "word": word.to_string(), "set": encode::interval_set(fixed) } })
        }
        FreeVerdict::PeriodicPoint { word, period, set } => json!({
            "periodic_point": { "word": word.to_string(), "period": period, "set": encode::interval_set(set) }
        }),
    }
}

fn free_text(v: &FreeVerdict) -> String {
    match v {
        FreeVerdict::FreeUpTo(l) => format!("free-up-to-{l}"),
        FreeVerdict::FixedPoint { word, fixed } => {
            format!("fixed point: {word} fixes {}", encode::set_text(fixed))
        }
        FreeVerdict::PeriodicPoint { word, period, set } => {
            format!(
                "periodic point: {word} has period {period} on {}",
                encode::set_text(set)
            )
        }
    }
}

fn free(gens: &GeneratorSet, depth: usize, periodic: Option<usize>) -> Res {
    let r = free_up_to(gens, depth, periodic);
    Ok(Report {
        text: format!("{} ({} elements)\n", free_text(&r.verdict), r.elements),
        json: json!({ "command": "free", "verdict": free_json(&r.verdict), "elements": r.elements }),
        ok: matches!(r.verdict, FreeVerdict::FreeUpTo(_)),
    })
}

/// A named check with its outcome.
struct Check {
    name: String,
    passed: bool,
    detail: String,
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

fn random_word(gens: &GeneratorSet, rng: &mut ChaCha8Rng, len: usize) -> Word {
    let names = gens.names();
    Word::from_letters(
        (0..len)
            .map(|_| {
                let name = names[rng.gen_range(0..names.len())].clone();
                (name, if rng.gen_bool(0.5) { 1 } else { -1 })
            })
            .collect(),
    )
}

fn verify(
    name: &str,
    field: Option<&Field>,
    params: &[String],
    length: Option<usize>,
    seed: u64,
) -> Res {
    let which = Builtin::from_name(name).ok_or_else(|| format!("unknown builtin '{name}'"))?;
    let field = field.cloned().unwrap_or_else(|| {
        match which {
            Builtin::Bs11 => Preset::Quartic2,
            Builtin::Crystallographic => Preset::Cubic2,
            _ => Preset::Sqrt2,
        }
        .field()
    });
    let mut overrides = BuiltinParams::new();
    for p in params {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| format!("--params: expected name=expr, got '{p}'"))?;
        let x = parse_number(&field, v).map_err(|e| format!("--params {k}: {e}"))?;
        overrides.insert(k.trim().to_string(), x);
    }
    let g = builtin(which, &field, &overrides).map_err(|e| e.to_string())?;
    let relations = relation_check(&g.gens).map_err(|e| e.to_string())?;
    let mut checks: Vec<Check> = relations
        .iter()
        .map(|r| match &r.witness {
            None => check(format!("relator {}", r.relation), true, "holds"),
            Some(x) => check(
                format!("relator {}", r.relation),
                false,
                format!("sides differ at {x}"),
            ),
        })
        .collect();
    let mut rng = rng_from_seed(seed);
    match which {
        Builtin::Bs11 | Builtin::Crystallographic => {
            let l = length.unwrap_or(if which == Builtin::Bs11 { 6 } else { 5 });
            let r = free_up_to(&g.gens, l, None);
            let passed = matches!(r.verdict, FreeVerdict::FreeUpTo(_));
            checks.push(check("freeness", passed, free_text(&r.verdict)));
        }
        Builtin::Metabelian3 => checks.extend(metabelian_checks(&g, &mut rng)?),
        Builtin::Alternating(n) => checks.extend(alternating_checks(&g, n, &mut rng)?),
    }
    let all = checks.iter().all(|c| c.passed);
    let rel_summary = match (relations.len(), relations.iter().all(|r| r.holds())) {
        (1, true) => "relator holds".to_string(),
        (_, true) => "relators hold".to_string(),
        (_, false) => "relator fails".to_string(),
    };
    let mut summary = vec![rel_summary];
    summary.extend(checks.iter().skip(relations.len()).map(|c| {
        if c.passed && c.name == "freeness" {
            c.detail.clone()
        } else {
            format!("{}: {}", c.name, c.detail)
        }
    }));
    let mut text = format!("{which} over {}\n", field_name(&field));
    for (k, v) in &g.params {
        writeln!(text, "  {k} = {v}").expect("string");
    }
    for c in &checks {
        writeln!(
            text,
            "  [{}] {}: {}",
            if c.passed { "ok" } else { "FAIL" },
            c.name,
            c.detail
        )
        .expect("string");
    }
    writeln!(text, "{}", summary.join("; ")).expect("string");
    let json_checks: Vec<Value> = checks
        .iter()
        .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
        .collect();
    let json_params: serde_json::Map<String, Value> = g
        .params
        .iter()
        .map(|(k, v)| (k.clone(), encode::number(v)))
        .collect();
    Ok(Report {
        text,
        json: json!({
            "command": "verify",
            "builtin": which.to_string(),
            "field": encode::field(&field),
            "params": json_params,
            "checks": json_checks,
            "passed": all,
        }),
        ok: all,
    })
}

fn field_name(f: &Field) -> String {
    match Preset::ALL.into_iter().find(|p| p.field() == *f) {
        Some(p) => p.name().to_string(),
        None => {
            let spec = f.spec();
            let poly: Vec<String> = spec
                .minimal_polynomial
                .iter()
                .map(ToString::to_string)
                .collect();
            format!("the field with minimal polynomial [{}]", poly.join(", "))
        }
    }
}

fn metabelian_checks(g: &BuiltinGroup, rng: &mut ChaCha8Rng) -> Result<Vec<Check>, String> {
    let f = g.gens.field().clone();
    let swap = g.gens.get("g").ok_or("generator g missing")?;
    let third = f.ratio(1, 3);
    let mut out = Vec::new();
    let mut bad = None;
    for _ in 0..10 {
        let beta = number_below(&f, rng, &third, false);
        let c = commutator(&Iet::rotation(&beta), swap);
        if c.order(12) != Some(3) || c.support().len() != 3 {
            bad = Some(beta);
            break;
        }
    }
    out.push(match bad {
        None => check(
            "[R_b, g] for 10 sampled b < 1/3",
            true,
            "order 3 on three intervals",
        ),
        Some(b) => check(
            "[R_b, g] for 10 sampled b < 1/3",
            false,
            format!("fails at b = {b}"),
        ),
    });
    let mut comms = Vec::new();
    while comms.len() < 12 {
        let u = g
            .gens
            .evaluate(&random_word(&g.gens, rng, 4))
            .map_err(|e| e.to_string())?;
        let v = g
            .gens
            .evaluate(&random_word(&g.gens, rng, 4))
            .map_err(|e| e.to_string())?;
        let c = commutator(&u, &v);
        if !c.is_identity() {
            comms.push(c);
        }
    }
    let commute = comms
        .iter()
        .enumerate()
        .all(|(i, a)| comms[..i].iter().all(|b| a.commutes_with(b)));
    let orders = comms.iter().all(|c| c.order(12) == Some(3));
    out.push(check(
        "12 sampled commutators",
        commute && orders,
        if commute && orders {
            "pairwise commuting, order 3"
        } else {
            "not abelian of exponent 3"
        },
    ));
    Ok(out)
}

fn factorial_half(n: usize) -> usize {
    (3..=n).product()
}

fn alternating_checks(
    g: &BuiltinGroup,
    n: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Check>, String> {
    let mut out = Vec::new();
    let perms: Vec<Perm> = g.gn.iter().map(|(_, e)| e.sigma().clone()).collect();
    if n <= 8 {
        let size = generated_group(n, &perms, factorial_half(n) + 1).len();
        let even = perms.iter().all(Perm::is_even);
        out.push(check(
            "block permutations",
            even && size == factorial_half(n),
            format!("generate a group of order {size}"),
        ));
    }
    let fam = g.family.as_ref().ok_or("family data missing")?;
    let mut additive = true;
    for _ in 0..20 {
        let u = g
            .gens
            .evaluate(&random_word(&g.gens, rng, 5))
            .map_err(|e| e.to_string())?;
        let v = g
            .gens
            .evaluate(&random_word(&g.gens, rng, 5))
            .map_err(|e| e.to_string())?;
        let l = |h: &Iet| ell_morphism(fam, h).map(|e| e.ell);
        additive &=
            matches!((l(&u), l(&v), l(&u.compose(&v))), (Some(a), Some(b), Some(c)) if a + b == c);
    }
    out.push(check(
        "ell on 20 sampled word pairs",
        additive,
        if additive { "additive" } else { "not additive" },
    ));
    Ok(out)
}

fn saf_json(s: &SafValue) -> Value {
    Value::Array(
        s.matrix()
            .iter()
            .map(|row| Value::Array(row.iter().map(|x| Value::String(x.to_string())).collect()))
            .collect(),
    )
}

fn saf(input: &MapInput, field: Option<&Field>, against: Option<&str>) -> Res {
    let doc = load(&input.iet, field)?;
    let (name, f) = pick(&doc, input.map.as_deref(), &input.iet)?;
    let s = saf_invariant(f);
    let mut text = format!("SAF({name}) =\n{s}\n");
    let mut report = json!({ "command": "saf", "map": name, "value": saf_json(&s) });
    if let Some(other) = against {
        let (oname, g) = pick(&doc, Some(other), &input.iet)?;
        let verdict = saf_distinguish(f, g);
        writeln!(
            text,
            "SAF({oname}) =\n{}\n{name} and {oname}: {verdict}",
            saf_invariant(g)
        )
        .expect("string");
        report["against"] = json!({ "map": oname, "value": saf_json(&saf_invariant(g)), "verdict": verdict.to_string() });
    }
    ok(text, report)
}

fn normalize(f: &Iet) -> Res {
    let Some(norm) = pl_normalize(f) else {
        return Ok(Report {
            text: "not a product of restricted rotations with disjoint supports\n".into(),
            json: json!({ "command": "normalize", "normalized": false }),
            ok: false,
        });
    };
    let mut text = String::from("blocks:\n");
    for (iv, angle) in &norm.blocks {
        writeln!(text, "  {iv:?}  angle {angle}").expect("string");
    }
    let slopes = norm.pl_map.slopes();
    writeln!(
        text,
        "slopes: {}",
        slopes
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    )
    .expect("string");
    writeln!(text, "element: {}", gn_text(&norm.phi)).expect("string");
    ok(
        text,
        json!({
            "command": "normalize",
            "normalized": true,
            "blocks": norm.blocks.iter().map(|(iv, a)| json!({ "interval": encode::interval(iv), "angle": encode::number(a) })).collect::<Vec<_>>(),
            "domain": encode::numbers(&norm.pl_map.domain),
            "slopes": encode::numbers(&slopes),
            "element": gn_text(&norm.phi),
        }),
    )
}
