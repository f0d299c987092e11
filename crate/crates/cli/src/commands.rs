use std::fmt::Write as _;
use std::io::Read;

use anyhow::Result;
use clap::{Args, ValueEnum};
use quiddity::audit::{expected_sqrt_irreducibles, selftest, sort_by_size};
use quiddity::even::even_decomposition;
use quiddity::triangulation::{admissible_pairing, find_labeling_with};
use quiddity::{
    classify_irreducibles, enumerate_quiddities, find_decomposition, is_irreducible, phi,
    phi_inverse, quiddity_sign, rescale_even, rescale_even_inverse, ClassifySpec, Decomposition,
    DecompositionQuery, EnumSpec, Error, EvenMode, GenKind, Generator, Quiddity, QuiddityRecord,
    Sign, WorkLimit, ZeroPolicy,
};
use serde::Serialize;
use serde_json::json;

use crate::config::RunConfig;
use crate::input::{read_tuple, TupleInput};
use crate::report::{usage, Report, Status};

#[derive(Args, Debug, Clone)]
pub struct TupleArgs {
    /// Generator descriptor: z, z:s, sqrt:k, isqrt:k or alpha, with an
    /// optional +nonneg suffix.
    #[arg(long = "gen")]
    pub gen: Option<Generator>,
    /// The tuple: `[1,1,1,1]`, `["sqrt(2)",...]`, a record object, `-` for
    /// stdin or `@path`.
    #[arg(long)]
    pub tuple: String,
}

impl TupleArgs {
    fn read(&self, stdin: &mut dyn Read, cfg: &mut RunConfig) -> Result<TupleInput> {
        self.read_or(None, stdin, cfg)
    }

    fn read_or(
        &self,
        fallback: Option<Generator>,
        stdin: &mut dyn Read,
        cfg: &mut RunConfig,
    ) -> Result<TupleInput> {
        let t = read_tuple(&self.tuple, self.gen, fallback, stdin)?;
        cfg.generator = Some(t.gen);
        cfg.tuple = Some(t.coeffs.clone());
        Ok(t)
    }
}

fn tuple_text(gen: &Generator, coeffs: &[i64]) -> String {
    let elems: Vec<String> = gen.elements(coeffs).iter().map(|e| e.to_string()).collect();
    format!("({})", elems.join(", "))
}

fn coeffs_text(coeffs: &[i64]) -> String {
    let parts: Vec<String> = coeffs.iter().map(i64::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn sign_word(sign: Sign) -> &'static str {
    match sign {
        Sign::Plus => "+Id",
        Sign::Minus => "-Id",
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// A tuple that need not be a quiddity, in the record layout.
#[derive(Serialize)]
struct TupleJson {
    size: usize,
    coeffs: Vec<i64>,
    elements: Vec<String>,
    generator: Generator,
    quiddity: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    sign: Option<Sign>,
}

impl TupleJson {
    fn new(gen: Generator, coeffs: Vec<i64>) -> TupleJson {
        let sign = quiddity_sign(&gen, &coeffs);
        TupleJson {
            size: coeffs.len(),
            elements: gen
                .elements(&coeffs)
                .iter()
                .map(|e| e.to_string())
                .collect(),
            coeffs,
            generator: gen,
            quiddity: sign.is_some(),
            sign,
        }
    }
}

pub fn verify(args: &TupleArgs, stdin: &mut dyn Read, cfg: &mut RunConfig) -> Result<Report> {
    let t = args.read(stdin, cfg)?;
    match Quiddity::new(t.gen, t.coeffs.clone()) {
        Ok(q) => {
            let irreducible = is_irreducible(&q)?;
            let rec = QuiddityRecord::new(&q, Some(irreducible));
            let text = format!(
                "quiddity: yes\nsign: {} (product is {})\ntuple: {} over {}\ncanonical: {}\nirreducible: {}\n",
                q.sign(),
                sign_word(q.sign()),
                tuple_text(&t.gen, q.coeffs()),
                t.gen,
                coeffs_text(&q.canonical()),
                yes_no(irreducible)
            );
            Report::new(
                json!({"quiddity": true, "sign": q.sign(), "irreducible": irreducible}),
                text,
            )?
            .with_records(vec![rec])
        }
        Err(Error::NotAQuiddity) => {
            let text = format!(
                "quiddity: no\ntuple: {} over {}\n",
                tuple_text(&t.gen, &t.coeffs),
                t.gen
            );
            Report::new(
                json!({"quiddity": false, "tuple": TupleJson::new(t.gen, t.coeffs)}),
                text,
            )?
            .with_records(Vec::new())
        }
        Err(e) => Err(e.into()),
    }
}

#[derive(Args, Debug, Clone)]
pub struct EnumerateArgs {
    #[arg(long = "gen")]
    pub gen: Generator,
    #[arg(long)]
    pub size: usize,
    /// Coefficients range over [-bound, bound] ([0, bound] for +nonneg).
    #[arg(long)]
    pub bound: u32,
    /// Keep only canonical representatives of dihedral classes.
    #[arg(long)]
    pub canonical: bool,
    /// Annotate each quiddity with its irreducibility.
    #[arg(long)]
    pub irreducible: bool,
}

pub fn enumerate(args: &EnumerateArgs, cfg: &mut RunConfig, limit: WorkLimit) -> Result<Report> {
    cfg.generator = Some(args.gen);
    cfg.size = Some(args.size);
    cfg.bound = Some(args.bound);
    cfg.canonical = args.canonical;
    cfg.irreducible = args.irreducible;
    let mut spec = EnumSpec::new(args.gen, args.size, args.bound);
    if args.canonical {
        spec = spec.canonical();
    }
    let found = enumerate_quiddities(&spec, limit)?;
    let records = found
        .iter()
        .map(|q| {
            Ok(QuiddityRecord::new(
                q,
                if args.irreducible {
                    Some(is_irreducible(q)?)
                } else {
                    None
                },
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut text = format!("{} quiddities ({spec})\n", records.len());
    for r in &records {
        let _ = write!(text, "{}  sign {}", coeffs_text(&r.coeffs), r.sign);
        if let Some(irr) = r.irreducible {
            let _ = write!(text, "  {}", if irr { "irreducible" } else { "reducible" });
        }
        text.push('\n');
    }
    Report::new(json!({"count": records.len()}), text)?.with_records(records)
}

#[derive(Args, Debug, Clone)]
pub struct ClassifyArgs {
    #[arg(long = "gen")]
    pub gen: Generator,
    #[arg(long, default_value_t = 3)]
    pub min_size: usize,
    #[arg(long)]
    pub max_size: usize,
    #[arg(long)]
    pub bound: u32,
}

/// The complete list of irreducible classes known for `gen`, if any.
fn known_irreducibles(gen: &Generator, bound: u32) -> Option<Vec<Vec<i64>>> {
    match (gen.kind(), gen.is_nonneg()) {
        (GenKind::Int { s }, false) => Some(expected_sqrt_irreducibles(s.checked_mul(s)?, bound)),
        (GenKind::Sqrt { k }, false) => Some(expected_sqrt_irreducibles(k, bound)),
        (GenKind::Int { s: 1 }, true) => {
            let mut v = vec![vec![0, 0, 0, 0]];
            if bound >= 1 {
                v.push(vec![1, 1, 1]);
            }
            sort_by_size(&mut v);
            Some(v)
        }
        _ => None,
    }
}

pub fn classify(args: &ClassifyArgs, cfg: &mut RunConfig, limit: WorkLimit) -> Result<Report> {
    cfg.generator = Some(args.gen);
    cfg.min_size = Some(args.min_size);
    cfg.max_size = Some(args.max_size);
    cfg.bound = Some(args.bound);
    let c = classify_irreducibles(
        &ClassifySpec {
            gen: args.gen,
            min_size: args.min_size,
            max_size: args.max_size,
            bound: args.bound,
        },
        limit,
    )?;
    let found: Vec<Vec<i64>> = c.irreducibles.iter().map(|q| q.coeffs().to_vec()).collect();
    let violations: Vec<Vec<i64>> = c
        .two_small_violations
        .iter()
        .map(|q| q.coeffs().to_vec())
        .collect();
    let known = if args.min_size >= 3 {
        known_irreducibles(&args.gen, args.bound).map(|v| {
            v.into_iter()
                .filter(|t| (args.min_size..=args.max_size).contains(&t.len()))
                .collect::<Vec<_>>()
        })
    } else {
        None
    };
    let comparison = known.as_ref().map(|expected| {
        let missing: Vec<&Vec<i64>> = expected.iter().filter(|t| !found.contains(t)).collect();
        let unexpected: Vec<&Vec<i64>> = found.iter().filter(|t| !expected.contains(t)).collect();
        json!({"agrees": missing.is_empty() && unexpected.is_empty(), "missing": missing, "unexpected": unexpected})
    });
    let disagrees = comparison
        .as_ref()
        .is_some_and(|v| v["agrees"] == json!(false));

    let mut text = String::new();
    let _ = writeln!(
        text,
        "irreducible classes over {} for sizes {}..={}, coefficients within {}",
        args.gen, args.min_size, args.max_size, args.bound
    );
    let _ = writeln!(text, "size  quiddities  classes  irreducible");
    for s in &c.sizes {
        let _ = writeln!(
            text,
            "{:>4}  {:>10}  {:>7}  {:>11}",
            s.size, s.quiddities, s.classes, s.irreducible
        );
    }
    for q in &c.irreducibles {
        let _ = writeln!(text, "  {}", coeffs_text(q.coeffs()));
    }
    let _ = writeln!(text, "two-small-entries violations: {}", violations.len());
    if let Some(cmp) = &comparison {
        let _ = writeln!(
            text,
            "agrees with the known classification: {}",
            yes_no(cmp["agrees"] == json!(true))
        );
    }

    let records: Vec<QuiddityRecord> = c
        .irreducibles
        .iter()
        .map(|q| QuiddityRecord::new(q, Some(true)))
        .collect();
    let status = if violations.is_empty() && !disagrees {
        Status::Success
    } else {
        Status::Counterexample
    };
    Ok(Report::new(
        json!({
            "sizes": c.sizes,
            "irreducible_classes": found.len(),
            "two_small_violations": violations,
            "known_classification": comparison,
        }),
        text,
    )?
    .with_records(records)?
    .with_status(status))
}

#[derive(Args, Debug, Clone)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub tuple: TupleArgs,
    /// Only split into summands of even size at least 4 (over Z).
    #[arg(long)]
    pub even: bool,
    /// Split the tuple as written instead of any rotation or reversal.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Serialize)]
struct DecompositionJson<'a> {
    #[serde(flatten)]
    decomposition: &'a Decomposition,
    representative: Vec<i64>,
}

pub fn decompose(
    args: &DecomposeArgs,
    stdin: &mut dyn Read,
    cfg: &mut RunConfig,
) -> Result<Report> {
    let t = args.tuple.read(stdin, cfg)?;
    cfg.even = args.even;
    cfg.strict = args.strict;
    let q = Quiddity::new(t.gen, t.coeffs)?;
    let d = if args.even {
        let mode = if args.strict {
            EvenMode::Strict
        } else {
            EvenMode::UpToEquivalence
        };
        cfg.mode = Some(mode);
        even_decomposition(&q, mode)?
    } else {
        let query = if args.strict {
            DecompositionQuery::default().literal()
        } else {
            DecompositionQuery::default()
        };
        find_decomposition(&q, &query)?
    };
    let text = match &d {
        Some(d) => format!(
            "reducible: {} = {} (+) {}\n  read from rotation {}{}\n  signs {} and {}\n",
            coeffs_text(&d.representative(&q)),
            coeffs_text(&d.a),
            coeffs_text(&d.b),
            d.rotation,
            if d.reversed { ", reversed" } else { "" },
            d.a_sign,
            d.b_sign
        ),
        None => format!(
            "irreducible: {} has no such decomposition\n",
            coeffs_text(q.coeffs())
        ),
    };
    let witness = d.as_ref().map(|d| DecompositionJson {
        decomposition: d,
        representative: d.representative(&q),
    });
    Report::new(
        json!({"reducible": d.is_some(), "decomposition": witness}),
        text,
    )
}

#[derive(Args, Debug, Clone)]
pub struct PhiArgs {
    #[command(flatten)]
    pub tuple: TupleArgs,
    /// Map from <sqrt(k)> back to <i*sqrt(k)>.
    #[arg(long)]
    pub inverse: bool,
}

pub fn phi_cmd(args: &PhiArgs, stdin: &mut dyn Read, cfg: &mut RunConfig) -> Result<Report> {
    let t = args.tuple.read(stdin, cfg)?;
    cfg.inverse = args.inverse;
    let q = Quiddity::new(t.gen, t.coeffs)?;
    let image = if args.inverse {
        phi_inverse(&q)?
    } else {
        phi(&q)?
    };
    let source = QuiddityRecord::new(&image.source, None);
    let target = QuiddityRecord::new(&image.target, None);
    let text = format!(
        "{} over {}\n  maps to\n{} over {}\n",
        tuple_text(image.source.generator(), image.source.coeffs()),
        image.source.generator(),
        tuple_text(image.target.generator(), image.target.coeffs()),
        image.target.generator()
    );
    Report::new(json!({"source": source, "target": target}), text)?.with_records(vec![target])
}

#[derive(Args, Debug, Clone)]
pub struct RescaleArgs {
    #[command(flatten)]
    pub tuple: TupleArgs,
    /// Map a tuple over Z back to <sqrt(k)>; needs --k.
    #[arg(long, requires = "k")]
    pub inverse: bool,
    #[arg(long)]
    pub k: Option<u64>,
}

pub fn rescale(args: &RescaleArgs, stdin: &mut dyn Read, cfg: &mut RunConfig) -> Result<Report> {
    let t = args.tuple.read(stdin, cfg)?;
    cfg.inverse = args.inverse;
    let (k, target_gen, target) = if args.inverse {
        if t.gen != Generator::integers() {
            return Err(usage("--inverse expects a tuple over z"));
        }
        let k = args.k.ok_or_else(|| usage("--inverse needs --k"))?;
        (k, Generator::sqrt(k), rescale_even_inverse(&t.coeffs, k)?)
    } else {
        let k = match t.gen.kind() {
            _ if t.gen.is_nonneg() => return Err(usage("rescaling needs full coefficients")),
            GenKind::Sqrt { k } => k,
            GenKind::Int { s } => s
                .checked_mul(s)
                .ok_or_else(|| usage("generator too large"))?,
            _ => {
                return Err(usage(format!(
                    "rescaling starts from sqrt:k, not {}",
                    t.gen
                )))
            }
        };
        if args.k.is_some_and(|given| given != k) {
            return Err(usage(format!("--k disagrees with the generator {}", t.gen)));
        }
        (k, Generator::integers(), rescale_even(&t.coeffs, k)?)
    };
    cfg.k = Some(k);
    let source = TupleJson::new(t.gen, t.coeffs);
    let target = TupleJson::new(target_gen, target);
    let agrees = source.quiddity == target.quiddity;
    let text = format!(
        "{} over {} (quiddity: {})\n  rescales to\n{} over {} (quiddity: {})\n",
        coeffs_text(&source.coeffs),
        source.generator,
        yes_no(source.quiddity),
        coeffs_text(&target.coeffs),
        target.generator,
        yes_no(target.quiddity)
    );
    let status = if agrees {
        Status::Success
    } else {
        Status::Counterexample
    };
    Ok(Report::new(
        json!({"k": k, "source": source, "target": target, "transfer_holds": agrees}),
        text,
    )?
    .with_status(status))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ZeroPolicyArg {
    /// A 0-labeled triangle pairs with an adjacent 0-labeled one.
    Strict,
    /// 0-labeled triangles need no partner.
    Exempt,
}

impl From<ZeroPolicyArg> for ZeroPolicy {
    fn from(p: ZeroPolicyArg) -> ZeroPolicy {
        match p {
            ZeroPolicyArg::Strict => ZeroPolicy::Strict,
            ZeroPolicyArg::Exempt => ZeroPolicy::Exempt,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct TriangulateArgs {
    /// The tuple, over z unless --gen says otherwise.
    #[arg(long)]
    pub tuple: String,
    #[arg(long = "gen")]
    pub gen: Option<Generator>,
    /// Labels range over [-label-bound, label-bound].
    #[arg(long, default_value_t = 4)]
    pub label_bound: u32,
    #[arg(long, value_enum, default_value_t = ZeroPolicyArg::Strict)]
    pub zero_policy: ZeroPolicyArg,
}

pub fn triangulate(
    args: &TriangulateArgs,
    stdin: &mut dyn Read,
    cfg: &mut RunConfig,
    limit: WorkLimit,
) -> Result<Report> {
    let tuple_args = TupleArgs {
        gen: args.gen,
        tuple: args.tuple.clone(),
    };
    let t = tuple_args.read_or(Some(Generator::integers()), stdin, cfg)?;
    let policy = ZeroPolicy::from(args.zero_policy);
    cfg.label_bound = Some(args.label_bound);
    cfg.zero_policy = Some(policy);
    let q = Quiddity::new(t.gen, t.coeffs)?;
    match find_labeling_with(&q, args.label_bound, policy, limit)? {
        Some(l) => {
            let text = format!(
                "witness for {}\n{}",
                coeffs_text(q.coeffs()),
                l.diagram(policy)
            );
            Report::new(
                json!({
                    "found": true,
                    "quiddity": q.coeffs(),
                    "triangulation": l.triangulation,
                    "labels": l.labels,
                    "vertex_sums": l.vertex_sums(),
                    "pairs": admissible_pairing(&l, policy),
                }),
                text,
            )
        }
        None => {
            let text = format!(
                "no admissible labeling with labels within {} realizes {}\n",
                args.label_bound,
                coeffs_text(q.coeffs())
            );
            Ok(
                Report::new(json!({"found": false, "quiddity": q.coeffs()}), text)?
                    .with_status(Status::Counterexample),
            )
        }
    }
}

pub fn selftest_cmd(limit: WorkLimit) -> Result<Report> {
    let checks = selftest(limit)?;
    let failed = checks.iter().filter(|c| !c.passed).count();
    let mut text = String::new();
    for c in &checks {
        let _ = write!(
            text,
            "{}  {}",
            if c.passed { "ok  " } else { "FAIL" },
            c.name
        );
        if !c.detail.is_empty() {
            let _ = write!(text, "  ({})", c.detail);
        }
        text.push('\n');
    }
    let _ = writeln!(text, "{} checks, {failed} failed", checks.len());
    let status = if failed == 0 {
        Status::Success
    } else {
        Status::Counterexample
    };
    Ok(
        Report::new(json!({"checks": checks.len(), "failed": failed}), text)?
            .with_items(&checks)?
            .with_status(status),
    )
}
