//! One function per subcommand. Each returns the results and verdicts; the
//! caller wraps them into a report.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path as FsPath, PathBuf};
use std::sync::Arc;

use perverse_cells::algebra::{opposite, quadratic_dual, same_presentation, AlgebraKind};
use perverse_cells::complex::{ComplexDocument, ComplexWarning, ParseOptions};
use perverse_cells::document::{FlagMap, FlagStalk};
use perverse_cells::koszul::{ext_vs_dual, koszulity_check, KoszulError};
use perverse_cells::linalg::format_q;
use perverse_cells::sheaf::{diamonds, hom_space, restrict, Diamond, MembershipError, SheafContext, SheafError};
use perverse_cells::{
    check_module, random_modules, validate_tea, CellularData, FlagId, FlagSheafDocument, ModuleBudget, Path,
    PerverseTriangulation, Perversity, QuadraticQuiverAlgebra, Quiver, SheafDocument, SimplicialComplex,
};
use serde_json::{json, Value};

use crate::input::{input_error, perversity, Document, InputError, Inputs};
use crate::report::{Outcome, Verdict};

/// Flags shared by all subcommands.
#[derive(Debug, Clone)]
pub struct Options {
    pub perversity: Option<String>,
    pub which: AlgebraKind,
    pub seed: u64,
    pub max_degree: Option<usize>,
    pub clamp: bool,
    pub complex: Option<PathBuf>,
}

type Run = Result<Outcome, InputError>;

impl Outcome {
    /// Nest another outcome under `name`, prefixing its checks.
    fn absorb(&mut self, name: &str, sub: Outcome) {
        self.results.insert(name.to_string(), Value::Object(sub.results));
        for mut v in sub.verdicts {
            v.check = format!("{name}: {}", v.check);
            self.verdicts.push(v);
        }
    }
}

fn flag_vertices(x: &SimplicialComplex, f: FlagId) -> Vec<Vec<String>> {
    let sd = x.subdivision();
    sd.flag(f).chain().iter().map(|&s| x.labels(s).into_iter().map(String::from).collect()).collect()
}

fn path_names(q: &Quiver, p: &Path) -> Vec<String> {
    p.nodes().iter().map(|&v| q.name(v).to_string()).collect()
}

fn diamond_witness(q: &Quiver, d: &Diamond) -> Value {
    json!({
        "diamond": d.describe(q),
        "source": q.name(d.source),
        "left": q.name(d.left),
        "right": q.name(d.right),
        "target": q.name(d.target),
        "residual": d.residual.to_strings(),
    })
}

fn membership_witness(ctx: &SheafContext, data: &CellularData, e: &MembershipError) -> Value {
    let x = ctx.complex();
    let sd = x.subdivision();
    match e {
        MembershipError::WrongQuiver => json!({ "reason": e.to_string() }),
        MembershipError::NonConstantStalk(f, g) => json!({
            "reason": "stalk dimension changes inside a perverse simplex",
            "flags": [sd.key_list(x, *f), sd.key_list(x, *g)],
            "dims": [data.stalk(*f), data.stalk(*g)],
        }),
        MembershipError::NotIdentity(f, g) => json!({
            "reason": "map inside a perverse simplex is not the identity",
            "source": sd.key_list(x, *f),
            "target": sd.key_list(x, *g),
        }),
        MembershipError::Tea(d) => diamond_witness(ctx.flag_quiver(), d),
    }
}

fn warnings_json(warnings: &[ComplexWarning]) -> Vec<String> {
    warnings
        .iter()
        .map(|w| match w {
            ComplexWarning::NotMaximal { index, container } => {
                format!("listed simplex #{index} is a face of listed simplex #{container}")
            }
        })
        .collect()
}

pub fn validate(inputs: &mut Inputs, path: &FsPath) -> Run {
    let (x, warnings) = inputs.complex(path)?;
    Ok(validate_core(&x, &warnings))
}

fn validate_core(x: &SimplicialComplex, warnings: &[ComplexWarning]) -> Outcome {
    let mut out = Outcome::default();
    let mut f_vector = vec![0usize; x.dimension() + 1];
    for s in x.ids() {
        f_vector[x.dim(s)] += 1;
    }
    let euler: i64 = f_vector.iter().enumerate().map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) }).sum();
    out.put("vertices", x.vertices());
    out.put("dimension", x.dimension());
    out.put("simplices", x.len());
    out.put("f_vector", &f_vector);
    out.put("euler_characteristic", euler);
    out.put("maximal", x.maximal().iter().map(|&s| x.key(s)).collect::<Vec<_>>());
    out.put("warnings", warnings_json(warnings));
    out
}

pub fn subdivide(inputs: &mut Inputs, path: &FsPath) -> Run {
    let (x, _) = inputs.complex(path)?;
    Ok(subdivide_core(&x, true))
}

fn subdivide_core(x: &SimplicialComplex, list: bool) -> Outcome {
    let mut out = Outcome::default();
    let sd = x.subdivision();
    out.put("flags", sd.len());
    out.put("flags_by_length", sd.census());
    if list {
        out.put("flag_list", (0..sd.len()).map(|f| flag_vertices(x, f)).collect::<Vec<_>>());
    }
    out
}

pub fn ptriang(inputs: &mut Inputs, path: &FsPath, opts: &Options, level: Option<i64>) -> Run {
    let (x, _) = inputs.complex(path)?;
    let p = perversity(opts.perversity.as_deref(), &x)?;
    ptriang_core(&x, &p, level, opts.clamp, true)
}

fn ptriang_core(x: &Arc<SimplicialComplex>, p: &Perversity, level: Option<i64>, clamp: bool, list: bool) -> Run {
    let mut out = Outcome::default();
    let tri = PerverseTriangulation::new(x.clone(), p)?;
    let census = tri.census();
    out.put("census", &census);
    if list {
        let parts: Vec<Value> = tri
            .parts()
            .iter()
            .map(|part| {
                json!({
                    "anchor": x.key(part.anchor),
                    "level": part.level,
                    "flags": part.flags.iter().map(|&f| flag_vertices(x, f)).collect::<Vec<_>>(),
                })
            })
            .collect();
        out.put("perverse_simplices", parts);
    }
    if let Some(level) = level {
        let skeleton = tri.skeleton(level, clamp)?;
        out.put(
            "skeleton",
            json!({
                "level": level,
                "size": skeleton.len(),
                "flags": skeleton.iter().map(|&f| flag_vertices(x, f)).collect::<Vec<_>>(),
            }),
        );
    }
    out.verdict(Verdict::from_result(
        "perverse simplices partition the flags",
        if census.partition { Ok(()) } else { Err(json!({ "perversity": p.values() })) },
    ));
    out.verdict(Verdict::from_result(
        "skeleton differences split into the perverse simplices of each level",
        tri.check_components().map_err(|level| json!({ "level": level })),
    ));
    Ok(out)
}

pub fn quiver(inputs: &mut Inputs, path: &FsPath, opts: &Options) -> Run {
    let (x, _) = inputs.complex(path)?;
    let p = perversity(opts.perversity.as_deref(), &x)?;
    Ok(quiver_core(&x, &p))
}

fn quiver_core(x: &SimplicialComplex, p: &Perversity) -> Outcome {
    let mut out = Outcome::default();
    let q = Quiver::of_complex(x, p);
    out.put("perversity", p.values());
    out.put("nodes", (0..q.len()).map(|v| json!({ "name": q.name(v), "level": q.level(v) })).collect::<Vec<_>>());
    out.put("arrows", (0..q.arrows().len()).map(|a| q.arrow_name(a)).collect::<Vec<_>>());
    out.put("paths_of_length_two", q.paths(2).len());
    out.put("longest_path", q.longest_path());
    out
}

fn algebra_core(alg: &QuadraticQuiverAlgebra, max_degree: Option<usize>) -> Outcome {
    let mut out = Outcome::default();
    let q = alg.quiver();
    out.put("algebra", alg.label());
    out.put("nodes", q.names());
    out.put("arrows", (0..q.arrows().len()).map(|a| q.arrow_name(a)).collect::<Vec<_>>());
    let blocks: Vec<Value> = alg
        .relations()
        .blocks()
        .iter()
        .map(|b| {
            json!({
                "source": q.name(b.source),
                "target": q.name(b.target),
                "paths": b.paths.iter().map(|p| path_names(q, p)).collect::<Vec<_>>(),
                "path_count": b.paths.len(),
                "relation_rank": b.rank(),
                "relations": b.rows.to_strings(),
            })
        })
        .collect();
    out.put("blocks", blocks);
    out.put("relation_rank", alg.relations().rank());
    let dims = match max_degree {
        Some(d) => alg.graded_dimensions(d),
        None => alg.hilbert_series(),
    };
    match dims {
        Ok(dims) => {
            out.put("graded_dimensions", &dims);
            out.put("total_dimension", dims.iter().sum::<usize>());
        }
        Err(e) => out.put("grading", e.to_string()),
    }
    out
}

pub fn algebra(inputs: &mut Inputs, path: &FsPath, opts: &Options) -> Run {
    let alg = match inputs.complex_or_algebra(path)? {
        Document::Complex(x) => {
            let p = perversity(opts.perversity.as_deref(), &x)?;
            QuadraticQuiverAlgebra::build(opts.which, &x, &p)
        }
        Document::Algebra(alg) => alg,
    };
    Ok(algebra_core(&alg, opts.max_degree))
}

fn relation_terms(q: &Quiver, rows: Option<&Vec<Vec<(Path, perverse_cells::Q)>>>) -> Value {
    let rows = rows.map(|r| r.as_slice()).unwrap_or_default();
    Value::Array(
        rows.iter()
            .map(|row| {
                Value::Array(
                    row.iter().map(|(p, c)| json!({ "path": path_names(q, p), "coefficient": format_q(c) })).collect(),
                )
            })
            .collect(),
    )
}

/// Where two presentations first differ.
fn presentation_difference(a: &QuadraticQuiverAlgebra, b: &QuadraticQuiverAlgebra) -> Value {
    let (qa, qb) = (a.quiver(), b.quiver());
    if qa.names() != qb.names() {
        return json!({ "nodes": { "left": qa.names(), "right": qb.names() } });
    }
    let arrows = |q: &Quiver| (0..q.arrows().len()).map(|i| q.arrow_name(i)).collect::<BTreeSet<_>>();
    let (aa, ab) = (arrows(qa), arrows(qb));
    if aa != ab {
        return json!({
            "arrows_only_left": aa.difference(&ab).collect::<Vec<_>>(),
            "arrows_only_right": ab.difference(&aa).collect::<Vec<_>>(),
        });
    }
    let (ca, cb): (BTreeMap<_, _>, BTreeMap<_, _>) =
        (a.relations().canonical_form().into_iter().collect(), b.relations().canonical_form().into_iter().collect());
    let keys: BTreeSet<_> = ca.keys().chain(cb.keys()).copied().collect();
    for key in keys {
        let (ra, rb) = (ca.get(&key), cb.get(&key));
        if ra != rb {
            return json!({
                "block": { "source": qa.name(key.0), "target": qa.name(key.1) },
                "left_rank": ra.map_or(0, Vec::len),
                "right_rank": rb.map_or(0, Vec::len),
                "left_relations": relation_terms(qa, ra),
                "right_relations": relation_terms(qa, rb),
            });
        }
    }
    json!({ "reason": "presentations differ" })
}

fn compare(out: &mut Outcome, check: &str, left: &QuadraticQuiverAlgebra, right: &QuadraticQuiverAlgebra) {
    let result = if same_presentation(left, right) { Ok(()) } else { Err(presentation_difference(left, right)) };
    out.verdict(Verdict::from_result(check, result));
}

fn dims_or_null(alg: &QuadraticQuiverAlgebra) -> Value {
    alg.hilbert_series().map_or(Value::Null, |d| json!(d))
}

fn dualcheck_core(x: &SimplicialComplex, p: &Perversity) -> Run {
    let mut out = Outcome::default();
    let a = QuadraticQuiverAlgebra::chain_complex_algebra(x, p);
    let b = QuadraticQuiverAlgebra::equivalence_algebra(x, p);
    let a_neg = QuadraticQuiverAlgebra::chain_complex_algebra(x, &p.negate());
    let b_neg = QuadraticQuiverAlgebra::equivalence_algebra(x, &p.negate());
    let a_dual = quadratic_dual(&a)?;
    let b_dual = quadratic_dual(&b)?;
    out.put("perversity", p.values());
    out.put("A", dims_or_null(&a));
    out.put("A_dual", dims_or_null(&a_dual));
    out.put("B_negated", dims_or_null(&b_neg));
    compare(&mut out, "quadratic dual of A(δ) equals B(-δ)", &a_dual, &b_neg);
    compare(&mut out, "quadratic dual of B(δ) equals A(-δ)", &b_dual, &a_neg);
    compare(&mut out, "taking the quadratic dual twice returns A(δ)", &quadratic_dual(&a_dual)?, &a);
    Ok(out)
}

pub fn dualcheck(inputs: &mut Inputs, path: &FsPath, opts: &Options, against: Option<&FsPath>) -> Run {
    match inputs.complex_or_algebra(path)? {
        Document::Complex(x) => dualcheck_core(&x, &perversity(opts.perversity.as_deref(), &x)?),
        Document::Algebra(alg) => {
            let against = against.ok_or_else(|| input_error("an algebra document needs --against"))?;
            let other = inputs.algebra(against)?;
            let dual = quadratic_dual(&alg)?;
            let mut out = Outcome::default();
            out.put("algebra", alg.label());
            out.put("against", other.label());
            out.put("dual", dims_or_null(&dual));
            out.put("against_dimensions", dims_or_null(&other));
            compare(&mut out, "quadratic dual equals the comparison algebra", &dual, &other);
            Ok(out)
        }
    }
}

fn oppcheck_core(x: &SimplicialComplex, p: &Perversity) -> Outcome {
    let mut out = Outcome::default();
    out.put("perversity", p.values());
    for kind in [AlgebraKind::A, AlgebraKind::B] {
        let here = QuadraticQuiverAlgebra::build(kind, x, p);
        let there = QuadraticQuiverAlgebra::build(kind, x, &p.negate());
        compare(&mut out, &format!("{kind}(δ) equals the opposite of {kind}(-δ)"), &here, &opposite(&there));
    }
    out
}

pub fn oppcheck(inputs: &mut Inputs, path: &FsPath, opts: &Options, against: Option<&FsPath>) -> Run {
    match inputs.complex_or_algebra(path)? {
        Document::Complex(x) => Ok(oppcheck_core(&x, &perversity(opts.perversity.as_deref(), &x)?)),
        Document::Algebra(alg) => {
            let against = against.ok_or_else(|| input_error("an algebra document needs --against"))?;
            let other = inputs.algebra(against)?;
            let mut out = Outcome::default();
            out.put("algebra", alg.label());
            out.put("against", other.label());
            compare(&mut out, "algebra equals the opposite of the comparison algebra", &alg, &opposite(&other));
            Ok(out)
        }
    }
}

/// The complex for a sheaf document: embedded, or from `--complex`.
fn sheaf_complex(
    inputs: &mut Inputs,
    embedded: Option<&ComplexDocument>,
    shared: Option<&Arc<SimplicialComplex>>,
) -> Result<Arc<SimplicialComplex>, InputError> {
    match (embedded, shared) {
        (Some(doc), None) => {
            let options = ParseOptions { reject_non_maximal: inputs.strict };
            Ok(Arc::new(SimplicialComplex::from_document(doc, options)?.0))
        }
        (None, Some(x)) => Ok(x.clone()),
        (Some(_), Some(_)) => Err(input_error("complex given both inside the document and with --complex")),
        (None, None) => Err(input_error("no complex: embed one under \"complex\" or pass --complex")),
    }
}

fn shared_complex(inputs: &mut Inputs, opts: &Options) -> Result<Option<Arc<SimplicialComplex>>, InputError> {
    opts.complex.as_deref().map(|p| inputs.complex(p).map(|(x, _)| x)).transpose()
}

fn check_perversity_flag(opts: &Options, x: &SimplicialComplex, p: &Perversity) -> Result<(), InputError> {
    if let Some(flag) = opts.perversity.as_deref() {
        let given = perversity(Some(flag), x)?;
        if &given != p {
            return Err(input_error(format!("--perversity {given} disagrees with the document's {p}")));
        }
    }
    Ok(())
}

struct Loaded {
    ctx: SheafContext,
    data: CellularData,
}

fn sheaf_from_text(
    inputs: &mut Inputs,
    text: &str,
    opts: &Options,
    shared: Option<&Arc<SimplicialComplex>>,
) -> Result<Loaded, InputError> {
    let doc = SheafDocument::parse(text)?;
    let x = sheaf_complex(inputs, doc.complex.as_ref(), shared)?;
    let (p, data) = doc.to_data(&x)?;
    check_perversity_flag(opts, &x, &p)?;
    Ok(Loaded { ctx: SheafContext::new(x, &p)?, data })
}

fn load_sheaf(
    inputs: &mut Inputs,
    path: &FsPath,
    opts: &Options,
    shared: Option<&Arc<SimplicialComplex>>,
) -> Result<Loaded, InputError> {
    let text = inputs.read(path)?;
    sheaf_from_text(inputs, &text, opts, shared)
}

fn load_flag_sheaf(inputs: &mut Inputs, path: &FsPath, opts: &Options) -> Result<Loaded, InputError> {
    let shared = shared_complex(inputs, opts)?;
    let text = inputs.read(path)?;
    let doc = FlagSheafDocument::parse(&text)?;
    let x = sheaf_complex(inputs, doc.complex.as_ref(), shared.as_ref())?;
    let (p, data) = doc.to_data(&x)?;
    check_perversity_flag(opts, &x, &p)?;
    Ok(Loaded { ctx: SheafContext::new(x, &p)?, data })
}

fn phi_failure(ctx: &SheafContext, e: &SheafError) -> Value {
    match e {
        SheafError::Tea(d) => diamond_witness(ctx.quiver(), d),
        other => json!({ "reason": other.to_string() }),
    }
}

pub fn tea_check(inputs: &mut Inputs, path: &FsPath, opts: &Options) -> Run {
    let shared = shared_complex(inputs, opts)?;
    let Loaded { ctx, data } = load_sheaf(inputs, path, opts, shared.as_ref())?;
    let q = ctx.quiver();
    let mut out = Outcome::default();
    out.put("perversity", ctx.perversity().values());
    out.put("total_dimension", data.total_dimension());
    out.put("diamonds", diamonds(q).len());
    let tea = validate_tea(&data);
    let module = check_module(&ctx.equivalence_algebra(), &data)?;
    out.verdict(Verdict::from_result(
        "equivalence axiom holds on every diamond",
        tea.as_ref().map_or(Ok(()), |d| Err(diamond_witness(q, d))),
    ));
    out.verdict(Verdict::from_result(
        "diamond check agrees with the B(δ)-module relations",
        if tea.is_none() == module.is_none() {
            Ok(())
        } else {
            Err(json!({ "diamond_check": tea.is_none(), "module_relations": module.is_none() }))
        },
    ));
    Ok(out)
}

pub fn phi(inputs: &mut Inputs, path: &FsPath, opts: &Options) -> Run {
    let shared = shared_complex(inputs, opts)?;
    let Loaded { ctx, data } = load_sheaf(inputs, path, opts, shared.as_ref())?;
    let mut out = Outcome::default();
    match ctx.phi(&data) {
        Ok(s) => {
            let doc = FlagSheafDocument::from_data(ctx.complex(), ctx.perversity(), s.data(), false);
            out.put("sobject", doc);
            out.verdict(Verdict::pass("Φ(M) is constant along the perverse simplices"));
            let back = ctx.psi(&s)?;
            out.verdict(Verdict::from_result(
                "Ψ(Φ(M)) = M",
                if back == data { Ok(()) } else { Err(json!({ "reason": "round trip changed the object" })) },
            ));
        }
        Err(e) => out.verdict(Verdict::fail("Φ(M) is defined", phi_failure(&ctx, &e))),
    }
    Ok(out)
}

pub fn psi(inputs: &mut Inputs, path: &FsPath, opts: &Options) -> Run {
    let Loaded { ctx, data } = load_flag_sheaf(inputs, path, opts)?;
    let mut out = Outcome::default();
    match ctx.sobject(data.clone()) {
        Ok(s) => {
            let m = ctx.psi(&s)?;
            out.put("sheaf", SheafDocument::from_data(ctx.complex(), ctx.perversity(), &m, false));
            out.verdict(Verdict::pass("object is constant along the perverse simplices"));
            let again = ctx.phi(&m)?;
            out.verdict(Verdict::from_result(
                "Φ(Ψ(N)) = N",
                if again == s { Ok(()) } else { Err(json!({ "reason": "round trip changed the object" })) },
            ));
        }
        Err(e) => out.verdict(Verdict::fail(
            "object is constant along the perverse simplices",
            membership_witness(&ctx, &data, &e),
        )),
    }
    Ok(out)
}

fn roundtrip_one(ctx: &SheafContext, data: &CellularData) -> Result<(), Value> {
    let s = ctx.phi(data).map_err(|e| phi_failure(ctx, &e))?;
    let back = ctx.psi(&s).map_err(|e| json!({ "reason": e.to_string() }))?;
    if &back != data {
        return Err(json!({ "reason": "Ψ(Φ(M)) differs from M" }));
    }
    let again = ctx.phi(&back).map_err(|e| json!({ "reason": e.to_string() }))?;
    if again != s {
        return Err(json!({ "reason": "Φ(Ψ(N)) differs from N" }));
    }
    Ok(())
}

/// Round trips on `count` random B(δ)-modules.
fn roundtrip_random(x: &Arc<SimplicialComplex>, p: &Perversity, seed: u64, count: usize) -> Run {
    let ctx = SheafContext::new(x.clone(), p)?;
    let modules = random_modules(&ctx.equivalence_algebra(), seed, count, &ModuleBudget::default())?;
    let mut out = Outcome::default();
    out.put("perversity", p.values());
    out.put("seed", seed);
    out.put("samples", count);
    out.put("sample_dimensions", modules.iter().map(CellularData::total_dimension).collect::<Vec<_>>());
    let failure = modules.iter().enumerate().find_map(|(i, m)| {
        roundtrip_one(&ctx, m).err().map(|mut w| {
            w["sample"] = json!(i);
            w
        })
    });
    out.verdict(Verdict::from_result(
        "Ψ(Φ(M)) = M and Φ(Ψ(Φ(M))) = Φ(M) for every sample",
        failure.map_or(Ok(()), Err),
    ));
    Ok(out)
}

pub fn roundtrip(inputs: &mut Inputs, path: &FsPath, opts: &Options, count: usize) -> Run {
    let text = inputs.read(path)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    if value.get("vertices").is_some() {
        let (x, _) = inputs.complex_from_text(&text)?;
        let p = perversity(opts.perversity.as_deref(), &x)?;
        return roundtrip_random(&x, &p, opts.seed, count);
    }
    let shared = shared_complex(inputs, opts)?;
    let Loaded { ctx, data } = sheaf_from_text(inputs, &text, opts, shared.as_ref())?;
    let mut out = Outcome::default();
    out.put("perversity", ctx.perversity().values());
    out.put("total_dimension", data.total_dimension());
    out.verdict(Verdict::from_result("Ψ(Φ(M)) = M and Φ(Ψ(Φ(M))) = Φ(M)", roundtrip_one(&ctx, &data)));
    Ok(out)
}

pub fn hom(inputs: &mut Inputs, first: &FsPath, second: &FsPath, opts: &Options) -> Run {
    let shared = shared_complex(inputs, opts)?;
    let m = load_sheaf(inputs, first, opts, shared.as_ref())?;
    let n = load_sheaf(inputs, second, opts, shared.as_ref())?;
    if m.ctx.complex() != n.ctx.complex() || m.ctx.perversity() != n.ctx.perversity() {
        return Err(input_error("the two objects live over different complexes or perversities"));
    }
    let q = m.ctx.quiver();
    let h = hom_space(&m.data, &n.data)?;
    let mut out = Outcome::default();
    out.put("dimension", h.dimension());
    let basis: Vec<Value> = h
        .basis
        .iter()
        .map(|f| {
            let components: serde_json::Map<String, Value> = f
                .components
                .iter()
                .enumerate()
                .filter(|(_, c)| c.rows() > 0 && c.cols() > 0)
                .map(|(v, c)| (q.name(v).to_string(), json!(c.to_strings())))
                .collect();
            Value::Object(components)
        })
        .collect();
    out.put("basis", basis);
    if let (Ok(pm), Ok(pn)) = (m.ctx.phi(&m.data), m.ctx.phi(&n.data)) {
        let spread = hom_space(pm.data(), pn.data())?.dimension();
        out.put("spread_dimension", spread);
        out.verdict(Verdict::from_result(
            "Φ preserves the dimension of Hom",
            if spread == h.dimension() { Ok(()) } else { Err(json!({ "before": h.dimension(), "after": spread })) },
        ));
    }
    Ok(out)
}

pub fn restrict_cmd(inputs: &mut Inputs, path: &FsPath, opts: &Options, flags: &[String], close: bool) -> Run {
    if flags.is_empty() {
        return Err(input_error("restrict needs at least one --flag"));
    }
    let Loaded { ctx, data } = load_flag_sheaf(inputs, path, opts)?;
    let x = ctx.complex();
    let sd = x.subdivision();
    let mut chosen = BTreeSet::new();
    for key in flags {
        let parts: Vec<&str> = key.split('<').map(str::trim).collect();
        let f = sd.resolve_key_list(x, &parts).ok_or_else(|| input_error(format!("unknown flag `{key}`")))?;
        chosen.insert(f);
    }
    let set = if close { sd.closed_union(&chosen).flags } else { chosen };
    let restricted = match restrict(x, &data, &set) {
        Ok(r) => r,
        Err(SheafError::NotClosed { missing }) => {
            return Err(input_error(format!(
                "flag set is not closed under faces: {} is missing (pass --close to take the closure)",
                sd.key(x, missing)
            )))
        }
        Err(e) => return Err(e.into()),
    };
    let q = restricted.quiver();
    let split = |name: &str| name.split('<').map(String::from).collect::<Vec<_>>();
    let mut out = Outcome::default();
    out.put("flags", set.iter().map(|&f| sd.key_list(x, f)).collect::<Vec<_>>());
    out.put("total_dimension", restricted.total_dimension());
    out.put(
        "stalks",
        (0..q.len()).map(|v| FlagStalk { flag: split(q.name(v)), dim: restricted.stalk(v) }).collect::<Vec<_>>(),
    );
    out.put(
        "maps",
        q.arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| FlagMap {
                source: split(q.name(s)),
                target: split(q.name(t)),
                matrix: restricted.map(a).to_strings(),
            })
            .collect::<Vec<_>>(),
    );
    Ok(out)
}

fn koszul_core(alg: &QuadraticQuiverAlgebra) -> Run {
    let mut out = Outcome::default();
    let report = koszulity_check(alg)?;
    out.put("graded_dimensions", dims_or_null(alg));
    out.put("report", &report);
    let witness = || {
        let nonlinear =
            report.simples.iter().find(|s| !s.linear).map(|s| json!({ "simple": s.simple, "betti": s.betti }));
        json!({ "reason": report.reason, "nonlinear_resolution": nonlinear })
    };
    out.verdict(Verdict::from_result(
        format!("{} is Koszul", alg.label()),
        if report.koszul { Ok(()) } else { Err(witness()) },
    ));
    Ok(out)
}

pub fn koszul(inputs: &mut Inputs, path: &FsPath, opts: &Options) -> Run {
    match inputs.complex_or_algebra(path)? {
        Document::Complex(x) => {
            let p = perversity(opts.perversity.as_deref(), &x)?;
            koszul_core(&QuadraticQuiverAlgebra::build(opts.which, &x, &p))
        }
        Document::Algebra(alg) => koszul_core(&alg),
    }
}

fn extdual_core(alg: &QuadraticQuiverAlgebra, dual: &QuadraticQuiverAlgebra) -> Run {
    let mut out = Outcome::default();
    let check = format!("Ext over {} matches {}", alg.label(), dual.label());
    match ext_vs_dual(alg, dual) {
        Ok(report) => {
            let witness = json!({ "mismatches": report.mismatches, "diagonal": report.diagonal });
            let ok = report.matches && report.diagonal;
            out.put("report", &report);
            out.verdict(Verdict::from_result(check, if ok { Ok(()) } else { Err(witness) }));
        }
        Err(e @ KoszulError::Calibration) => out.verdict(Verdict::fail(check, json!({ "reason": e.to_string() }))),
        Err(e) => return Err(e.into()),
    }
    Ok(out)
}

pub fn extdual(inputs: &mut Inputs, path: &FsPath, opts: &Options, against: Option<&FsPath>) -> Run {
    match inputs.complex_or_algebra(path)? {
        Document::Complex(x) => {
            let p = perversity(opts.perversity.as_deref(), &x)?;
            let (alg, dual) = match opts.which {
                AlgebraKind::A => (AlgebraKind::A, AlgebraKind::B),
                AlgebraKind::B => (AlgebraKind::B, AlgebraKind::A),
            };
            extdual_core(&QuadraticQuiverAlgebra::build(alg, &x, &p), &QuadraticQuiverAlgebra::build(dual, &x, &p))
        }
        Document::Algebra(alg) => {
            let against = against.ok_or_else(|| input_error("an algebra document needs --against"))?;
            let dual = inputs.algebra(against)?;
            extdual_core(&alg, &dual)
        }
    }
}

fn order_core(x: &Arc<SimplicialComplex>, p: &Perversity) -> Run {
    let ctx = SheafContext::new(x.clone(), p)?;
    let sd = x.subdivision();
    let mut out = Outcome::default();
    out.verdict(Verdict::from_result(
        "incident simplices with δ(s) > δ(t) satisfy s ≤ t",
        ctx.incidence_order_check().map_err(|(s, t)| json!({ "s": x.key(s), "t": x.key(t) })),
    ));
    out.verdict(Verdict::from_result(
        "anchors of adjacent flags are equal or ordered",
        ctx.anchor_order_check().map_err(|(g, h)| json!({ "g": sd.key_list(x, g), "h": sd.key_list(x, h) })),
    ));
    Ok(out)
}

/// Every check for one complex and perversity.
pub fn report(inputs: &mut Inputs, path: &FsPath, opts: &Options, count: usize) -> Run {
    let (x, warnings) = inputs.complex(path)?;
    let p = perversity(opts.perversity.as_deref(), &x)?;
    let mut out = Outcome::default();
    out.put("perversity", p.values());
    out.put("seed", opts.seed);
    out.absorb("validate", validate_core(&x, &warnings));
    out.absorb("subdivide", subdivide_core(&x, false));
    out.absorb("ptriang", ptriang_core(&x, &p, None, false, false)?);
    out.absorb("ptriang_negated", ptriang_core(&x, &p.negate(), None, false, false)?);
    out.absorb("quiver", quiver_core(&x, &p));
    let a = QuadraticQuiverAlgebra::chain_complex_algebra(&x, &p);
    let b = QuadraticQuiverAlgebra::equivalence_algebra(&x, &p);
    out.absorb("algebra_A", algebra_core(&a, opts.max_degree));
    out.absorb("algebra_B", algebra_core(&b, opts.max_degree));
    out.absorb("dualcheck", dualcheck_core(&x, &p)?);
    out.absorb("oppcheck", oppcheck_core(&x, &p));
    out.absorb("order", order_core(&x, &p)?);
    out.absorb("roundtrip", roundtrip_random(&x, &p, opts.seed, count)?);
    out.absorb("koszul_A", koszul_core(&a)?);
    out.absorb("koszul_B", koszul_core(&b)?);
    out.absorb("extdual_A", extdual_core(&a, &b)?);
    out.absorb("extdual_B", extdual_core(&b, &a)?);
    Ok(out)
}
