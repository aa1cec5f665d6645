use std::fs;
use std::path::Path;

use qwa_core::embed::{self, HomCheck};
use qwa_core::lattice::IntMatrix;
use qwa_core::mixed::{self, CanonicalMixedAlgebra, Equivalence};
use qwa_core::qweyl::{qweyl_equivalence_necessary, QuantumWeylAlgebra};
use qwa_core::reduce::{reduce_to_canonical, replay, ReductionCertificate, RelationTable, Step};
use qwa_core::syntax::{parse_document, print_document, Document};
use qwa_core::torus::{check_morphism, uniparameter_iso_decide, MorphismCheck, QuantumTorus, UniparameterIso};
use qwa_core::{GeneratorMap, Presentation, ReductionSystem, Scalar, ScalarGroup};

use crate::verdict::{Status, Verdict};

type Out = Result<Verdict, String>;

fn load(path: &Path) -> Result<Document, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_document(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn presentation(path: &Path) -> Result<Presentation, String> {
    load(path)?.presentation.ok_or_else(|| format!("{}: no `generators` line", path.display()))
}

fn qweyl(path: &Path) -> Result<QuantumWeylAlgebra, String> {
    let doc = load(path)?;
    let spec = doc.qweyl.ok_or_else(|| format!("{}: no `qweyl` block", path.display()))?;
    QuantumWeylAlgebra::new(doc.group, spec.q, spec.lambda).map_err(|e| e.to_string())
}

fn reduced(path: &Path) -> Result<(Presentation, CanonicalMixedAlgebra, ReductionCertificate), String> {
    let p = presentation(path)?;
    let (c, cert) = reduce_to_canonical(&p).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((p, c, cert))
}

fn format_lambda(group: &ScalarGroup, lambda: &[Vec<Scalar>]) -> String {
    let rows: Vec<String> =
        lambda.iter().map(|r| format!("[{}]", r.iter().map(|s| group.format(s)).collect::<Vec<_>>().join(", "))).collect();
    format!("[{}]", rows.join(", "))
}

fn err(e: qwa_core::Error) -> String {
    e.to_string()
}

pub fn check(path: &Path) -> Out {
    let p = presentation(path)?;
    let confluence = ReductionSystem::from_presentation(&p).map_err(err)?.check_confluence();
    let mut v;
    if p.has_eulerian() {
        let status = if confluence.is_confluent() { Status::Positive } else { Status::Negative };
        v = Verdict::new("check", status)
            .say("presentation has Eulerian relations; only the overlap test applies")
            .field("admissible", "n/a");
    } else {
        let report = p.check_admissible().map_err(err)?;
        let ok = report.is_admissible();
        v = Verdict::new("check", if ok { Status::Positive } else { Status::Negative })
            .say(if ok { "admissible" } else { "not admissible" })
            .field("admissible", ok);
        if let Some(w) = &report.witness {
            let g = p.generators();
            v = v.field("triangle", format!("{},{},{}", g[w.weyl_edge.0], g[w.weyl_edge.1], g[w.third]));
        }
        let agree = ok == confluence.is_confluent();
        v = v.field("cross_check", if agree { "agree" } else { "disagree" });
    }
    v = v.field("confluent", confluence.is_confluent()).field("generators", p.len());
    Ok(v)
}

fn step_text(s: &Step) -> String {
    match s {
        Step::Scale(i, c) => format!("scale({},{c})", i + 1),
        Step::Add(i, j, c) => format!("add({},{},{c})", i + 1, j + 1),
        Step::Permute(o) => format!("permute({})", o.iter().map(|k| (k + 1).to_string()).collect::<Vec<_>>().join(",")),
    }
}

pub fn reduce(path: &Path, emit: Option<&Path>) -> Out {
    let (p, c, cert) = reduced(path)?;
    let exact = replay(&p, &cert).map_err(err)? == RelationTable::from_presentation(&c.presentation()).map_err(err)?;
    let pairs: Vec<String> =
        cert.pairs.iter().map(|&(x, y)| format!("({},{})", p.generators()[x], p.generators()[y])).collect();
    let mut v = Verdict::new("reduce", Status::Positive)
        .say(format!("S_{{{},{}}} with Lambda = {}", c.n(), c.r(), format_lambda(c.group(), c.lambda())))
        .field("n", c.n())
        .field("r", c.r())
        .field("lambda", format_lambda(c.group(), c.lambda()))
        .field("pairs", pairs.join(" "))
        .field("steps", cert.steps.len())
        .field("certificate", cert.steps.iter().map(step_text).collect::<Vec<_>>().join(" "))
        .field("replay", if exact { "exact" } else { "mismatch" });
    if let Some(out) = emit {
        let text = c.presentation().to_string();
        if out == Path::new("-") {
            v = v.say("canonical presentation:");
            for line in text.lines() {
                v = v.say(format!("  {line}"));
            }
        } else {
            fs::write(out, text).map_err(|e| format!("{}: {e}", out.display()))?;
            v = v.field("written", out.display());
        }
    }
    Ok(v)
}

pub fn invariants(path: &Path) -> Out {
    let (_, c, _) = reduced(path)?;
    let inv = c.invariants().map_err(err)?;
    Ok(Verdict::new("invariants", Status::Positive)
        .say(format!("canonical form S_{{{},{}}}", c.n(), c.r()))
        .field("n", c.n())
        .field("r", c.r())
        .field("gk_dim", inv.gk_dim)
        .field("gk_trdeg", inv.gk_trdeg)
        .field("w_supdeg", inv.w_supdeg)
        .field("E", if inv.e_is_field { "k" } else { "0" })
        .field("G", &inv.g)
        .field("center_rank", inv.center_rank())
        .field("center_lattice", &inv.center_lattice)
        .field("torus_simple", inv.torus_simple))
}

fn torus(path: &Path) -> Result<QuantumTorus, String> {
    QuantumTorus::from_presentation(&presentation(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn torus_simple(path: &Path) -> Out {
    let t = torus(path)?;
    let simple = t.is_simple();
    Ok(Verdict::new("torus simple", if simple { Status::Positive } else { Status::Negative })
        .say(if simple { "simple" } else { "not simple" })
        .field("simple", simple)
        .field("dim", t.dim()))
}

pub fn torus_center(path: &Path) -> Out {
    let t = torus(path)?;
    let l = t.central_lattice();
    Ok(Verdict::new("torus center", Status::Positive).field("center_rank", l.rows()).field("central_lattice", &l))
}

pub fn torus_iso(a: &Path, b: &Path, param: &str) -> Out {
    let (ta, tb) = (torus(a)?, torus(b)?);
    Ok(match uniparameter_iso_decide(&ta, &tb, param).map_err(err)? {
        UniparameterIso::Iso(h) => Verdict::new("torus iso", Status::Positive).field("iso", "true").field("H", &h),
        UniparameterIso::NotIso => Verdict::new("torus iso", Status::Negative).field("iso", "false"),
        UniparameterIso::NotApplicable => Verdict::new("torus iso", Status::Inconclusive)
            .say(format!("weights are not all powers of `{param}`"))
            .field("iso", "not-applicable"),
    })
}

fn parse_matrix(text: &str) -> Result<IntMatrix, String> {
    let rows = text
        .split(';')
        .map(|r| r.split(',').map(|x| x.trim().parse::<i64>().map_err(|e| format!("matrix entry `{x}`: {e}"))).collect())
        .collect::<Result<Vec<Vec<i64>>, String>>()?;
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err("matrix rows must have equal length".into());
    }
    Ok(IntMatrix::from_rows(&rows))
}

pub fn torus_morphism(a: &Path, b: &Path, matrix: &str) -> Out {
    let (ta, tb) = (torus(a)?, torus(b)?);
    let h = parse_matrix(matrix)?;
    Ok(match check_morphism(&ta, &tb, &h).map_err(err)? {
        MorphismCheck::Valid(m) => Verdict::new("torus morphism", Status::Positive)
            .field("morphism", "valid")
            .field("isomorphism", m.is_isomorphism()),
        MorphismCheck::Violation(i, j) => Verdict::new("torus morphism", Status::Negative)
            .field("morphism", "invalid")
            .field("violation", format!("y{},y{}", i + 1, j + 1)),
    })
}

pub fn qweyl_localize(path: &Path) -> Out {
    let a = qweyl(path)?;
    let loc = a.localize_to_mixed().map_err(err)?;
    let c = &loc.canonical;
    let mut v = Verdict::new("qweyl localize", Status::Positive).say(format!(
        "Frac(A_{}) = Frac(S_{{{},{}}}) with generators {}",
        a.n(),
        c.n(),
        c.r(),
        loc.names.join(", ")
    ));
    for line in loc.format_images() {
        v = v.say(format!("  {line}"));
    }
    Ok(v.field("n", c.n())
        .field("r", c.r())
        .field("lambda", format_lambda(c.group(), c.lambda()))
        .field("z_normal", "true")
        .field("relations", if loc.relations.is_verified() { "verified" } else { "failing" })
        .field("lambda_antisymmetric", loc.lambda_antisymmetric))
}

pub fn qweyl_invariants(path: &Path) -> Out {
    let a = qweyl(path)?;
    let inv = a.invariants().map_err(err)?;
    Ok(Verdict::new("qweyl invariants", Status::Positive)
        .field("gk", inv.gk)
        .field("w_supdeg", inv.w_supdeg)
        .field("center_trivial", inv.center_trivial.map_or("not-applicable".into(), |b| b.to_string())))
}

fn equivalence_verdict(command: &str, e: &Equivalence) -> Verdict {
    let status = match e {
        Equivalence::Equivalent(_) => Status::Positive,
        Equivalence::NotEquivalent(_) => Status::Negative,
        Equivalence::Inconclusive => Status::Inconclusive,
    };
    let mut v = Verdict::new(command, status).field("reason", e.code());
    if let Equivalence::Equivalent(w) = e {
        v = v.say("witness (forward, checked both ways):");
        for (i, g) in w.forward.source.generators().iter().enumerate() {
            v = v.say(format!("  {g} -> {}", w.forward.format_image(i)));
        }
        v = v.field("H", &w.h).field("witness", "verified");
    }
    v
}

pub fn qweyl_equiv(a: &Path, b: &Path) -> Out {
    let e = qweyl_equivalence_necessary(&qweyl(a)?, &qweyl(b)?).map_err(err)?;
    Ok(equivalence_verdict("qweyl equiv", &e))
}

pub fn equiv(a: &Path, b: &Path) -> Out {
    let (_, ca, _) = reduced(a)?;
    let (_, cb, _) = reduced(b)?;
    let e = mixed::equivalence_decide(&ca, &cb).map_err(err)?;
    Ok(equivalence_verdict("equiv", &e)
        .field("first", format!("S_{{{},{}}}", ca.n(), ca.r()))
        .field("second", format!("S_{{{},{}}}", cb.n(), cb.r())))
}

fn map_verdict(command: &str, map: &GeneratorMap) -> Result<Verdict, String> {
    let check = map.verify().map_err(err)?;
    let mut v = Verdict::new(command, if check.is_verified() { Status::Positive } else { Status::Negative });
    for line in map.format_map_block().lines() {
        v = v.say(line);
    }
    match check {
        HomCheck::Verified => v = v.field("homomorphism", "verified"),
        HomCheck::Failing { relation, residue } => {
            v = v.field("homomorphism", "failing").field("relation", relation).field("residue", residue);
        }
    }
    Ok(v)
}

pub fn embed_torus(path: &Path) -> Out {
    let t = torus(path)?;
    let e = embed::embed_torus(t.group(), t.lambda()).map_err(err)?;
    Ok(map_verdict("embed torus", &e.map)?.field("target_generators", e.map.target.len()).field("r", e.r).field("t", e.t))
}

pub fn embed_mixed(path: &Path) -> Out {
    let (_, c, _) = reduced(path)?;
    let e = embed::embed_mixed(&c).map_err(err)?;
    let size = e.non_weyl_size();
    let n = c.n();
    let bounds = n * (n - 1) <= size && size <= n * (n - 1) + c.r();
    Ok(map_verdict("embed mixed", &e.map)?
        .field("m", e.field.m())
        .field("s", e.field.n())
        .field("t", e.field.t())
        .field("bounds", bounds))
}

pub fn embed_verify(source: &Path, map_file: &Path) -> Out {
    let src = presentation(source)?;
    let doc = load(map_file)?;
    let target = doc.presentation.ok_or_else(|| format!("{}: no target `generators` line", map_file.display()))?;
    let entries = doc.map.ok_or_else(|| format!("{}: no `map` block", map_file.display()))?;
    let map = GeneratorMap::from_entries(src, target, &entries).map_err(err)?;
    map_verdict("embed verify", &map)
}

pub fn normalize(path: &Path) -> Out {
    let doc = load(path)?;
    let text = print_document(&doc).map_err(err)?;
    let mut v = Verdict::new("normalize", Status::Positive);
    v.raw = Some(text);
    Ok(v)
}
