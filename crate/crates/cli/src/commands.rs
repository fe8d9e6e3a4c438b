use std::fmt::Write;

use serde_json::{json, Value};
use sod_core::bnclassify::classify_bn;
use sod_core::curve::bnp_enumerate;
use sod_core::families::{FamilySpec, MAX_GENUS};
use sod_core::hochschild::hochschild_table;
use sod_core::intmat;
use sod_core::lattice::{isometry_search, IsometryResult};
use sod_core::{EulerLattice, KClass, Side};

use crate::args::{CheckKind, Command, LatticeArgs, SideArg};
use crate::{random, table, verify, CommandResult};

type Outcome = Result<CommandResult, String>;

pub fn dispatch(command: Command) -> CommandResult {
    let outcome = match command {
        Command::Invariants(l) => invariants(&l),
        Command::Check { what, lattice, class } => check(what, &lattice, &class),
        Command::Isometry { left, right, bound } => isometry(&left, &right, bound),
        Command::ClassifyBn { genus } => classify(genus),
        Command::VerifyAll { filter } => Ok(verify::verify_all(filter.as_deref())),
        Command::Lattice(l) => lattice(&l),
        Command::Mutate { lattice, exceptional, class, side } => mutate(&lattice, &exceptional, &class, side),
        Command::Complement { lattice, class, side } => complement(&lattice, &class, side),
        Command::Bnp { genus } => bnp(genus),
        Command::RandomCheck { cases } => random_check(cases),
    };
    outcome.unwrap_or_else(CommandResult::usage)
}

fn family(args: &LatticeArgs) -> Result<Option<FamilySpec>, String> {
    let Some(kind) = args.family.as_deref() else { return Ok(None) };
    let need = |v: Option<u64>, flag: &str| v.ok_or_else(|| format!("family '{kind}' needs --{flag}"));
    let text = if kind.contains(':') {
        kind.to_string()
    } else {
        match kind {
            "augmented" => format!("augmented:{}", need(args.genus, "genus")?),
            "ipg" | "rpg" => format!("{kind}:{},{}", need(args.g1, "g1")?, need(args.g2, "g2")?),
            "bncomp" => format!(
                "bncomp:{},{},{}",
                need(args.genus, "genus")?,
                need(args.h0, "h0")?,
                need(args.h1, "h1")?
            ),
            other => return Err(format!("unknown family '{other}'; expected augmented, ipg, rpg or bncomp")),
        }
    };
    text.parse().map(Some).map_err(|e: sod_core::Error| e.to_string())
}

fn load(args: &LatticeArgs) -> Result<(Option<FamilySpec>, EulerLattice), String> {
    if let Some(path) = &args.lattice {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let l: EulerLattice = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        return Ok((None, l));
    }
    let spec = family(args)?.expect("clap requires --family or --lattice");
    let l = spec.lattice().map_err(|e| e.to_string())?;
    Ok((Some(spec), l))
}

fn parse_class(text: &str, l: &EulerLattice) -> Result<KClass, String> {
    let coords = text
        .split(',')
        .map(|c| c.trim().parse::<i64>().map_err(|_| format!("bad class '{text}'; expected comma-separated integers")))
        .collect::<Result<Vec<_>, _>>()?;
    let v = KClass::new(coords);
    l.check(&v).map_err(|e| e.to_string())?;
    Ok(v)
}

fn side(s: SideArg) -> Side {
    match s {
        SideArg::Left => Side::Left,
        SideArg::Right => Side::Right,
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types serialize")
}

fn lattice_text(l: &EulerLattice) -> String {
    format!("basis {}\n{}", l.labels().join(" "), table::matrix(&l.gram_rows(), "  "))
}

fn invariants(args: &LatticeArgs) -> Outcome {
    let (spec, l) = load(args)?;
    let serre = l.serre_analysis().ok();
    let hh = spec.as_ref().map(hochschild_table);
    let mut text = String::new();
    if let Some(spec) = &spec {
        writeln!(text, "family {spec}").unwrap();
    }
    text.push_str(&lattice_text(&l));
    writeln!(text, "det {}  unimodular {}", l.det(), l.is_unimodular()).unwrap();
    match &serre {
        Some(s) => {
            text.push_str("serre operator\n");
            text.push_str(&table::matrix(&s.serre_matrix, "  "));
            writeln!(text, "char poly {}", s.char_poly).unwrap();
            if let Some(f) = &s.cyclotomic_factors {
                let parts: Vec<String> = f.iter().map(|(n, m)| format!("Phi_{n}^{m}")).collect();
                writeln!(text, "cyclotomic factors {}", parts.join(" ")).unwrap();
            }
            writeln!(text, "quasiunipotent {}  unipotent {}", s.quasiunipotent, s.unipotent).unwrap();
        }
        None => text.push_str("no Serre operator: lattice is not unimodular\n"),
    }
    if let Some(hh) = &hh {
        writeln!(text, "HH_* {}", table::dims(&hh.hh_homology)).unwrap();
        match &hh.hh_cohomology {
            Some(t) => writeln!(text, "HH^* {}", table::dims(t)).unwrap(),
            None => text.push_str("HH^* no closed form for these parameters\n"),
        }
    }
    let payload = json!({
        "family": spec.map(|s| s.to_string()),
        "lattice": l,
        "det": l.det().to_string(),
        "unimodular": l.is_unimodular(),
        "serre": serre,
        "hochschild": hh,
    });
    Ok(CommandResult::ok(payload, text))
}

fn check(what: CheckKind, args: &LatticeArgs, class: &str) -> Outcome {
    let (_, l) = load(args)?;
    let v = parse_class(class, &l)?;
    let p = l.class_predicates(&v).map_err(|e| e.to_string())?;
    let mut payload = to_json(&p);
    payload["class"] = to_json(&v);
    let text = format!(
        "class {v}\nchi_self {}\nnumerically exceptional {}\nnumerically 2-spherical {}",
        p.chi_self, p.numerically_exceptional, p.numerically_2spherical
    );
    Ok(match what {
        CheckKind::Exceptional if !p.numerically_exceptional => CommandResult::failed(payload, text),
        _ => CommandResult::ok(payload, text),
    })
}

fn isometry(left: &str, right: &str, bound: i64) -> Outcome {
    if !(0..=100).contains(&bound) {
        return Err(format!("bound {bound} must lie in 0..=100"));
    }
    let parse = |s: &str| -> Result<EulerLattice, String> {
        let spec: FamilySpec = s.parse().map_err(|e: sod_core::Error| e.to_string())?;
        spec.lattice().map_err(|e| e.to_string())
    };
    let (l1, l2) = (parse(left)?, parse(right)?);
    let result = isometry_search(&l1, &l2, bound).map_err(|e| e.to_string())?;
    let payload = json!({ "left": left, "right": right, "bound": bound, "result": result });
    let text = match &result {
        IsometryResult::Found { matrix } => {
            format!("isometry {left} -> {right} found: P^T A1 P = A2 with P =\n{}", table::matrix(matrix, "  "))
        }
        IsometryResult::RefutedByInvariant { invariant } => {
            format!("no isometry {left} -> {right}: invariant {invariant} differs")
        }
        IsometryResult::NotFoundUpToBound { bound } => {
            format!("no isometry {left} -> {right} with entries bounded by {bound} (inconclusive)")
        }
    };
    Ok(if result.is_found() { CommandResult::ok(payload, text) } else { CommandResult::failed(payload, text) })
}

fn check_genus(g: u64) -> Result<(), String> {
    if g > MAX_GENUS {
        Err(format!("genus {g} exceeds the cap {MAX_GENUS}"))
    } else {
        Ok(())
    }
}

fn classify(g: u64) -> Outcome {
    check_genus(g)?;
    let entries = classify_bn(g).map_err(|e| e.to_string())?;
    let body: Vec<Vec<String>> = entries
        .iter()
        .map(|e| {
            vec![
                format!("({}, {})", e.h0, e.h1),
                e.form.to_string(),
                e.discriminant.to_string(),
                e.curve_equivalent.to_string(),
                serde_json::to_value(e.verdict).unwrap().as_str().unwrap().to_string(),
            ]
        })
        .collect();
    let text = format!(
        "genus {g}, curve form {}\n{}",
        entries.first().map(|e| e.curve_form.to_string()).unwrap_or_default(),
        table::rows(&["(h0, h1)", "form", "disc", "curve_equivalent", "verdict"], &body)
    );
    Ok(CommandResult::ok(json!({ "genus": g, "entries": entries }), text))
}

fn lattice(args: &LatticeArgs) -> Outcome {
    let (_, l) = load(args)?;
    let text = lattice_text(&l);
    Ok(CommandResult::ok(to_json(&l), text))
}

fn mutate(args: &LatticeArgs, e: &str, v: &str, s: SideArg) -> Outcome {
    let (_, l) = load(args)?;
    let (e, v) = (parse_class(e, &l)?, parse_class(v, &l)?);
    let out = l.mutate(&e, &v, side(s)).map_err(|e| e.to_string())?;
    let payload = json!({ "exceptional": e, "class": v, "side": side(s), "result": out });
    Ok(CommandResult::ok(payload, format!("{out}")))
}

fn complement(args: &LatticeArgs, class: &str, s: SideArg) -> Outcome {
    let (_, l) = load(args)?;
    let e = parse_class(class, &l)?;
    let c = l.orthogonal_complement(&e, side(s)).map_err(|e| e.to_string())?;
    let basis = c.basis();
    let mut text = String::from("basis in ambient coordinates\n");
    for (name, b) in c.lattice.labels().iter().zip(&basis) {
        writeln!(text, "  {name} = {b}").unwrap();
    }
    text.push_str(&lattice_text(&c.lattice));
    writeln!(text, "saturated {}", c.is_saturated()).unwrap();
    let payload = json!({
        "class": e,
        "side": side(s),
        "basis": basis,
        "embedding": intmat::to_rows(&c.embedding),
        "saturated": c.is_saturated(),
        "lattice": c.lattice,
    });
    Ok(CommandResult::ok(payload, text))
}

fn bnp(g: u64) -> Outcome {
    check_genus(g)?;
    let entries = bnp_enumerate(g);
    let body: Vec<Vec<String>> =
        entries.iter().map(|e| vec![e.r.to_string(), e.s.to_string(), e.degree.to_string(), e.count.to_string()]).collect();
    let text = format!("genus {g}\n{}", table::rows(&["h0", "h1", "degree", "count"], &body));
    Ok(CommandResult::ok(json!({ "genus": g, "entries": entries }), text))
}

fn random_check(cases: u32) -> Outcome {
    let seed = match std::env::var("SOD_SEED") {
        Ok(s) => s.trim().parse::<u64>().map_err(|_| format!("SOD_SEED '{s}' is not an unsigned integer"))?,
        Err(_) => 0,
    };
    Ok(random::run(seed, cases))
}
