use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use yangbax::algebra::{PrimenessReport, Quiver, TruncatedAlgebra, Truncation};
use yangbax::double::{almcybe_check, check_double_axioms, dbjac_to_aybe, double_lie_check, DoubleBracket};
use yangbax::fixtures::{candidate_count, fixture_search, FixtureKind};
use yangbax::format;
use yangbax::frt::{hr_graded_dimension, schur_weyl_decompose};
use yangbax::infty::{aybe_infty_residual, cybe_infty_residual, DoubleLeibnizSign};
use yangbax::linfty::{extension_check, Conventions};
use yangbax::operad::{classify, full_constraint_system, Classification, Symmetry};
use yangbax::report::{Check, Report, Verdict};
use yangbax::scalar::{parse_q, Q};
use yangbax::suite::{convention_flags, run_suite, JobSpec};
use yangbax::tensor::{GradedTensor, TensorMap, Word};
use yangbax::twisted::{poisson_correspondence, GeneratorBracket};
use yangbax::{ybe, Error, Result};

/// Exact checks for Yang-Baxter equations and Poisson-type structures.
#[derive(Parser)]
#[command(name = "yangbax", version)]
struct Cli {
    /// Print full residual maps alongside the first witness.
    #[arg(long, global = true)]
    emit_witness: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Yang-Baxter residuals of a map r: V(x)V -> V(x)V.
    #[command(subcommand)]
    Ybe(YbeCmd),
    /// Twisted Poisson brackets extended from r.
    #[command(subcommand)]
    Poisson(PoissonCmd),
    /// Double brackets and double Poisson axioms.
    #[command(subcommand)]
    Double(DoubleCmd),
    /// Truncated path and preprojective algebras of a quiver.
    #[command(subcommand)]
    Quiver(QuiverCmd),
    /// Distributivity of quadratic binary operads.
    #[command(subcommand)]
    Operad(OperadCmd),
    /// L-infinity axioms of a bracket family on a graded generator set.
    #[command(subcommand)]
    Linfty(LinftyCmd),
    /// CYBE-infinity and AYBE-infinity residuals.
    #[command(subcommand, name = "ybe-infty")]
    YbeInfty(YbeInftyCmd),
    /// R-twisted Schur-Weyl decomposition.
    #[command(subcommand)]
    Schurweyl(SchurWeylCmd),
    /// Run the acceptance criteria.
    Suite {
        /// Comma separated subset of 1..=10 (default: all).
        #[arg(long, value_delimiter = ',')]
        criteria: Vec<usize>,
        /// Also write the report here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        signs: SignArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum YbeKind {
    Cybe,
    Aybe,
    Qybe,
}

#[derive(Clone, Copy, ValueEnum)]
#[allow(clippy::enum_variant_names)]
enum SearchKind {
    SkewCybe,
    SkewAybe,
    SkewNonCybe,
}

#[derive(Subcommand)]
enum YbeCmd {
    Check {
        #[arg(long, value_enum)]
        kind: YbeKind,
        #[arg(long)]
        input: PathBuf,
    },
    /// CYBE(r) = AYBE(r) - (132) AYBE(r) (132) for skew r.
    Cae {
        #[arg(long)]
        input: PathBuf,
    },
    /// Brute-force enumeration of sparse integer skew maps.
    Search {
        #[arg(long, value_enum)]
        kind: SearchKind,
        #[arg(long)]
        dim: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "-1,0,1")]
        values: Vec<i64>,
        #[arg(long)]
        max_nonzero: Option<usize>,
    },
}

#[derive(Subcommand)]
enum PoissonCmd {
    /// Bracket of two words in the tensor algebra.
    Extend {
        #[arg(long)]
        r: PathBuf,
        /// Letters, comma separated (e.g. 0,1).
        #[arg(long, value_delimiter = ',')]
        lhs: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        rhs: Vec<usize>,
    },
    /// Twisted skew-symmetry, Jacobi and Leibniz up to a total degree.
    Verify {
        #[arg(long)]
        r: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgebraType {
    Path,
    Preprojective,
    Deformed,
}

#[derive(Args)]
struct AlgebraArgs {
    /// `poly:N` for k[x]/(x^N), `free:D` for the free algebra on D letters,
    /// or a quiver file.
    #[arg(long)]
    algebra: String,
    #[arg(long, value_enum, default_value = "path")]
    r#type: AlgebraType,
    /// Degree cap of the truncation.
    #[arg(long, default_value_t = 3)]
    cap: usize,
    /// Vertex weights of the deformed preprojective algebra.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    lambda: Vec<String>,
}

#[derive(Subcommand)]
enum DoubleCmd {
    /// Double Lie axioms of the bracket on the free algebra given by r.
    Lie {
        #[arg(long)]
        r: PathBuf,
    },
    Verify {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Tensor map whose inputs are generator pairs.
        #[arg(long)]
        bracket: PathBuf,
    },
    Almcybe {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        bracket: PathBuf,
    },
}

#[derive(Subcommand)]
enum QuiverCmd {
    Build {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "path")]
        r#type: AlgebraType,
        #[arg(long, default_value_t = 3)]
        cap: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Vec<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SymArg {
    None,
    Sym,
    Skew,
}

impl From<SymArg> for Symmetry {
    fn from(s: SymArg) -> Self {
        match s {
            SymArg::None => Symmetry::None,
            SymArg::Sym => Symmetry::Symmetric,
            SymArg::Skew => Symmetry::Skew,
        }
    }
}

#[derive(Subcommand)]
enum OperadCmd {
    Classify {
        #[arg(long, value_enum)]
        sym: Option<SymArg>,
        /// Relation files spanning the arity-three relations.
        #[arg(long, required = true)]
        relation: Vec<PathBuf>,
    },
    /// Basis of the solution space of the cancellation constraints.
    Nullspace {
        #[arg(long, value_enum)]
        sym: SymArg,
    },
}

#[derive(Args, Clone, Copy)]
struct SignArgs {
    /// Use the unshifted Leibniz sign and (-1)^i composition sign.
    #[arg(long)]
    literal_signs: bool,
    /// Use +1 in the double Leibniz rule.
    #[arg(long)]
    trivial_double_sign: bool,
}

impl SignArgs {
    fn conventions(self) -> Conventions {
        if self.literal_signs {
            Conventions::LITERAL
        } else {
            Conventions::default()
        }
    }

    fn double(self) -> DoubleLeibnizSign {
        if self.trivial_double_sign {
            DoubleLeibnizSign::Trivial
        } else {
            DoubleLeibnizSign::default()
        }
    }
}

#[derive(Subcommand)]
enum LinftyCmd {
    Check {
        #[arg(long)]
        family: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_m: usize,
        #[command(flatten)]
        signs: SignArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum InftyKind {
    Cybe,
    Aybe,
}

#[derive(Subcommand)]
enum YbeInftyCmd {
    Check {
        #[arg(long, value_enum)]
        kind: InftyKind,
        /// Structure constants file.
        #[arg(long)]
        algebra: PathBuf,
        /// Replace the product by its graded commutator.
        #[arg(long)]
        commutator: bool,
        #[arg(long)]
        family: PathBuf,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Decide the verdict with the Sh(i,i+j-1) reading.
        #[arg(long)]
        literal_shuffles: bool,
    },
}

#[derive(Subcommand)]
enum SchurWeylCmd {
    Decompose {
        #[arg(long = "R")]
        r: PathBuf,
        #[arg(long)]
        m: usize,
    },
    /// Both dimension oracles for the degree-m part of H_R.
    Hrdim {
        #[arg(long = "R")]
        r: PathBuf,
        #[arg(long)]
        m: usize,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn read_map(path: &Path) -> Result<TensorMap> {
    format::parse_tensor_map(&read(path)?)
}

fn report(title: &str) -> Report {
    let mut r = Report::new(title);
    r.conventions = convention_flags(Conventions::default(), DoubleLeibnizSign::default());
    r
}

fn bound(what: &str, value: usize, max: usize) -> Result<()> {
    if value > max {
        return Err(Error::Bound(format!("{what} = {value} exceeds {max}")));
    }
    Ok(())
}

fn map_lines(m: &TensorMap) -> String {
    format::write_tensor_map(m)
}

fn compact(m: &TensorMap) -> String {
    let w = |w: &Word| w.iter().map(usize::to_string).collect::<String>();
    let parts: Vec<String> = m.entries().map(|(o, i, c)| format!("{}<-{}:{}", w(o), w(i), c)).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ")
    }
}

fn residual_check(name: &str, rep: &ybe::YbeReport, emit: bool) -> Check {
    let verdict = Verdict::from_bool(rep.is_zero, || rep.to_string());
    let mut c = Check::new(name, verdict);
    if emit && !rep.is_zero {
        c = c.with_detail(map_lines(&rep.residual));
    }
    c
}

fn ybe_cmd(cmd: YbeCmd, emit: bool) -> Result<Report> {
    match cmd {
        YbeCmd::Check { kind, input } => {
            let r = read_map(&input)?;
            let (name, rep) = match kind {
                YbeKind::Cybe => ("cybe", ybe::cybe_residual(&r)?),
                YbeKind::Aybe => ("aybe", ybe::aybe_residual(&r)?),
                YbeKind::Qybe => ("qybe", ybe::qybe_residual(&r)?),
            };
            let mut out = report(&format!("ybe check {name}"));
            out.push(residual_check(name, &rep, emit));
            Ok(out)
        }
        YbeCmd::Cae { input } => {
            let r = read_map(&input)?;
            let mut out = report("ybe cae");
            if !ybe::is_skew(&r)? {
                out.push(Check::new("cae", Verdict::Precondition { reason: "r is not skew".into() }));
            } else {
                let ok = ybe::cae_identity_check(&r)?;
                let mut c =
                    Check::new("cae", Verdict::from_bool(ok, || "CYBE(r) differs from the AYBE combination".into()));
                if emit {
                    c = c.with_detail(map_lines(&ybe::cybe_map(&r)?));
                }
                out.push(c);
            }
            Ok(out)
        }
        YbeCmd::Search { kind, dim, values, max_nonzero } => {
            let fk = match kind {
                SearchKind::SkewCybe => FixtureKind::SkewCybe,
                SearchKind::SkewAybe => FixtureKind::SkewAybe,
                SearchKind::SkewNonCybe => FixtureKind::SkewNonCybe,
            };
            let found = fixture_search(fk, dim, &values, max_nonzero)?;
            let mut c = Check::new("search", Verdict::Pass).with_detail(format!(
                "{} of {} candidates",
                found.len(),
                candidate_count(dim, &values, max_nonzero)
            ));
            for (k, r) in found.iter().enumerate() {
                c = c.with_detail(format!("{k}: {}", compact(r)));
                if emit {
                    c = c.with_detail(map_lines(r));
                }
            }
            let mut out = report("ybe search");
            out.push(c);
            Ok(out)
        }
    }
}

fn poisson_cmd(cmd: PoissonCmd) -> Result<Report> {
    match cmd {
        PoissonCmd::Extend { r, lhs, rhs } => {
            let b = GeneratorBracket::from_r(&read_map(&r)?)?;
            bound("total degree", lhs.len() + rhs.len(), 8)?;
            let v = b.extend_words(&lhs, &rhs, lhs.len() + rhs.len())?;
            let mut out = report("poisson extend");
            out.push(Check::new("extend", Verdict::Pass).with_detail(format!("{{{lhs:?}, {rhs:?}}} = {v}")));
            Ok(out)
        }
        PoissonCmd::Verify { r, max_degree } => {
            bound("max degree", max_degree, 5)?;
            let rep = poisson_correspondence(&read_map(&r)?, max_degree)?;
            let mut out = report("poisson verify");
            for a in &rep.axioms {
                out.push(Check::new(a.axiom, Verdict::from_bool(a.passed(), || a.to_string())));
            }
            out.push(Check::new(
                "skew CYBE solution",
                Verdict::from_bool(rep.skew && rep.cybe_zero, || {
                    format!("skew {}, cybe-zero {}", rep.skew, rep.cybe_zero)
                }),
            ));
            Ok(out)
        }
    }
}

fn parse_lambda(v: &[String]) -> Result<Vec<Q>> {
    v.iter().map(|s| parse_q(s).map_err(Error::Input)).collect()
}

fn build_from_quiver(q: &Quiver, ty: AlgebraType, cap: usize, lambda: &[String]) -> Result<TruncatedAlgebra> {
    bound("cap", cap, 6)?;
    match ty {
        AlgebraType::Path => Ok(TruncatedAlgebra::path_algebra(q, cap, Truncation::Quotient)),
        AlgebraType::Preprojective => TruncatedAlgebra::preprojective(q, cap, None),
        AlgebraType::Deformed => {
            let l = parse_lambda(lambda)?;
            TruncatedAlgebra::preprojective(q, cap, Some(&l))
        }
    }
}

fn build_algebra(a: &AlgebraArgs) -> Result<TruncatedAlgebra> {
    let num = |s: &str| s.parse::<usize>().map_err(|_| Error::Input(format!("bad algebra size {s:?}")));
    if let Some(n) = a.algebra.strip_prefix("poly:") {
        let n = num(n)?;
        bound("truncation degree", n, 12)?;
        return TruncatedAlgebra::truncated_polynomial(n);
    }
    if let Some(d) = a.algebra.strip_prefix("free:") {
        let d = num(d)?;
        bound("letters", d, 3)?;
        bound("cap", a.cap, 5)?;
        return Ok(TruncatedAlgebra::free_algebra(d, a.cap, Truncation::Quotient));
    }
    let q = format::parse_quiver(&read(Path::new(&a.algebra))?)?;
    build_from_quiver(&q, a.r#type, a.cap, &a.lambda)
}

fn generator_values(alg: &TruncatedAlgebra, m: &TensorMap) -> Result<BTreeMap<(usize, usize), GradedTensor>> {
    if m.dim() != alg.dim() || m.domain_degree() != 2 || m.codomain_degree() != 2 {
        return Err(Error::Input(format!("bracket must be a 2 -> 2 map of dim {}", alg.dim())));
    }
    let mut values: BTreeMap<(usize, usize), GradedTensor> = BTreeMap::new();
    for (o, i, c) in m.entries() {
        values.entry((i[0], i[1])).or_default().add_term(o.clone(), c);
    }
    Ok(values)
}

fn outcome_check(name: &str, o: &yangbax::double::AxiomOutcome, labels: &[String]) -> Check {
    let verdict = Verdict::from_bool(o.passed(), || match &o.violation {
        Some((w, d)) => {
            let args: Vec<&str> = w.iter().map(|&i| labels[i].as_str()).collect();
            format!("at ({}) defect {}", args.join(", "), yangbax::double::fmt_tensor(d, labels))
        }
        None => String::new(),
    });
    let mut c = Check::new(name, verdict).with_detail(format!("{} tuples", o.checked));
    if o.overflow > 0 {
        c = c.with_detail(format!("{} tuples beyond truncation", o.overflow));
    }
    c
}

fn double_cmd(cmd: DoubleCmd, emit: bool) -> Result<Report> {
    match cmd {
        DoubleCmd::Lie { r } => {
            let r = read_map(&r)?;
            let (skew, jac) = double_lie_check(&r)?;
            let mut out = report("double lie");
            out.push(Check::new("dbskew", Verdict::from_bool(skew, || "r + r^21 != 0".into())));
            out.push(Check::new("dbjac", Verdict::from_bool(jac, || "double Jacobi residual nonzero".into())));
            if skew {
                let t = dbjac_to_aybe(&DoubleBracket::from_r(&r)?)?;
                let mut c = Check::new(
                    "dbjac -> AYBE transformation",
                    Verdict::from_bool(t.equal, || "transformed residual differs from AYBE(r)".into()),
                )
                .with_detail(format!("AYBE(r): {}", t.aybe));
                if emit {
                    c = c.with_detail(map_lines(&t.aybe.residual));
                }
                out.push(c);
            }
            Ok(out)
        }
        DoubleCmd::Verify { alg, bracket } => {
            let a = build_algebra(&alg)?;
            let db = DoubleBracket::from_generators(&a, &generator_values(&a, &read_map(&bracket)?)?)?;
            let rep = check_double_axioms(&db, &a)?;
            let mut out = report("double verify");
            for (name, o) in [
                ("dbskew", &rep.skew),
                ("dbjac", &rep.jacobi),
                ("dbpoiss", &rep.poisson),
                ("first-argument-rule", &rep.first_argument),
            ] {
                out.push(outcome_check(name, o, a.labels()));
            }
            Ok(out)
        }
        DoubleCmd::Almcybe { alg, bracket } => {
            let a = build_algebra(&alg)?;
            let db = DoubleBracket::from_generators(&a, &generator_values(&a, &read_map(&bracket)?)?)?;
            let rep = almcybe_check(&db, &a)?;
            let mut out = report("double almcybe");
            out.push(outcome_check("dbpoiss", &rep.poisson, a.labels()));
            match &rep.residuals {
                None => out.push(Check::new("almcybe", Verdict::Precondition { reason: "dbpoiss fails".into() })),
                Some(res) if !res.cybe_zero => {
                    out.push(Check::new("almcybe", Verdict::Precondition { reason: "CYBE(r) != 0".into() }));
                    out.push(outcome_check("cybe-expansion", &res.intermediate, a.labels()));
                }
                Some(res) => {
                    out.push(outcome_check("almcybe", &res.identity, a.labels()));
                    out.push(outcome_check("cybe-expansion", &res.intermediate, a.labels()));
                }
            }
            Ok(out)
        }
    }
}

fn quiver_cmd(cmd: QuiverCmd) -> Result<Report> {
    let QuiverCmd::Build { input, r#type, cap, lambda } = cmd;
    let q = format::parse_quiver(&read(&input)?)?;
    let alg = build_from_quiver(&q, r#type, cap, &lambda)?;
    let (checked, bad) = alg.check_associative();
    let prime = match r#type {
        AlgebraType::Path => PrimenessReport::path_algebra(&q),
        _ => PrimenessReport::preprojective(&q),
    };
    let mut out = report("quiver build");
    out.push(
        Check::new(
            "associative",
            Verdict::from_bool(bad.is_none(), || {
                let (a, b, c) = bad.unwrap_or_default();
                format!("({}, {}, {})", alg.label(a), alg.label(b), alg.label(c))
            }),
        )
        .with_detail(format!("{checked} triples"))
        .with_detail(format!("dimension {}", alg.dim()))
        .with_detail(format!("hilbert series {:?}", alg.hilbert_series()))
        .with_detail(format!("basis {}", alg.labels().join(" ")))
        .with_detail(prime),
    );
    Ok(out)
}

fn operad_cmd(cmd: OperadCmd) -> Result<Report> {
    match cmd {
        OperadCmd::Classify { sym, relation } => {
            let rels = relation.iter().map(|p| format::parse_relation(&read(p)?)).collect::<Result<Vec<_>>>()?;
            let sym = sym.map(Symmetry::from).unwrap_or(rels[0].sym);
            let mut out = report("operad classify");
            let c = match classify(sym, &rels)? {
                Classification::Operad(name) => {
                    Check::new("distributive", Verdict::Pass).with_detail(format!("operad: {name}"))
                }
                other => Check::new("distributive", Verdict::Fail { witness: other.to_string() }),
            };
            out.push(c);
            Ok(out)
        }
        OperadCmd::Nullspace { sym } => {
            let sys = full_constraint_system(sym.into())?;
            let mut out = report("operad nullspace");
            out.push(Check::new("constraints", Verdict::Pass).with_detail(sys));
            Ok(out)
        }
    }
}

fn linfty_cmd(cmd: LinftyCmd) -> Result<Report> {
    let LinftyCmd::Check { family, max_m, signs } = cmd;
    bound("max m", max_m, 4)?;
    let fam = format::parse_brackets(&read(&family)?)?;
    let conv = signs.conventions();
    let rep = extension_check(&fam, max_m, conv)?;
    let mut out = Report::new("linfty check");
    out.conventions = convention_flags(conv, signs.double());
    let text = rep.to_string();
    out.push(Check::new(
        "generators",
        Verdict::from_bool(rep.generators.passed(), || "axiom fails on generators".into()),
    ));
    out.push(Check::new("products", Verdict::from_bool(rep.products.passed(), || "axiom fails on products".into())));
    let cancel = rep.cancellation.iter().all(|c| c.passed());
    out.push(
        Check::new("cancellation", Verdict::from_bool(cancel, || "formal terms do not cancel".into()))
            .with_detail(text),
    );
    Ok(out)
}

fn ybe_infty_cmd(cmd: YbeInftyCmd) -> Result<Report> {
    let YbeInftyCmd::Check { kind, algebra, commutator, family, n, literal_shuffles } = cmd;
    bound("n", n, 4)?;
    let mut alg = format::parse_structure(&read(&algebra)?)?;
    if commutator {
        alg = alg.commutator();
    }
    let fam = format::parse_rn(&read(&family)?, &alg)?;
    let mut out = report("ybe-infty check");
    out.conventions.push(("verdict-reading".into(), if literal_shuffles { "Sh(i,i+j-1)" } else { "Sh(i,j-1)" }.into()));
    let c = match kind {
        InftyKind::Cybe => {
            let rep = cybe_infty_residual(&alg, &fam, n)?;
            let zero = if literal_shuffles { rep.literal.is_zero() } else { rep.default.is_zero() };
            Check::new("cybe-infinity", Verdict::from_bool(zero, || "residual nonzero".into())).with_detail(rep)
        }
        InftyKind::Aybe => {
            let rep = aybe_infty_residual(&alg, &fam, n)?;
            Check::new("aybe-infinity", Verdict::from_bool(rep.residual.is_zero(), || "residual nonzero".into()))
                .with_detail(rep)
        }
    };
    out.push(c);
    Ok(out)
}

fn schurweyl_cmd(cmd: SchurWeylCmd) -> Result<Report> {
    let (r, m) = match &cmd {
        SchurWeylCmd::Decompose { r, m } | SchurWeylCmd::Hrdim { r, m } => (read_map(r)?, *m),
    };
    bound("m", m, 4)?;
    bound("dim V", r.dim(), 3)?;
    match cmd {
        SchurWeylCmd::Decompose { .. } => {
            let mut out = report("schurweyl decompose");
            let c = match schur_weyl_decompose(&r, m) {
                Err(Error::Precondition(p)) => Check::new("decomposition", Verdict::Precondition { reason: p }),
                Err(e) => return Err(e),
                Ok(rep) => {
                    Check::new("decomposition", Verdict::from_bool(rep.passed(), || "dimension count fails".into()))
                        .with_detail(rep)
                }
            };
            out.push(c);
            Ok(out)
        }
        SchurWeylCmd::Hrdim { .. } => {
            let mut out = report("schurweyl hrdim");
            let c = match hr_graded_dimension(&r, m) {
                Err(Error::Precondition(p)) => Check::new("hrdim", Verdict::Precondition { reason: p }),
                Err(e) => return Err(e),
                Ok(d) => {
                    Check::new("hrdim", Verdict::from_bool(d.agree(), || "oracles disagree".into())).with_detail(d)
                }
            };
            out.push(c);
            Ok(out)
        }
    }
}

fn suite_cmd(criteria: Vec<usize>, out: Option<PathBuf>, signs: SignArgs) -> Result<Report> {
    let mut spec = if criteria.is_empty() { JobSpec::default() } else { JobSpec::with_criteria(criteria)? };
    spec.conventions = signs.conventions();
    spec.double_leibniz = signs.double();
    let rep = run_suite(&spec);
    if let Some(path) = out {
        fs::write(&path, format!("{rep}\n")).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(rep)
}

fn run(cli: Cli) -> Result<Report> {
    let emit = cli.emit_witness;
    match cli.cmd {
        Cmd::Ybe(c) => ybe_cmd(c, emit),
        Cmd::Poisson(c) => poisson_cmd(c),
        Cmd::Double(c) => double_cmd(c, emit),
        Cmd::Quiver(c) => quiver_cmd(c),
        Cmd::Operad(c) => operad_cmd(c),
        Cmd::Linfty(c) => linfty_cmd(c),
        Cmd::YbeInfty(c) => ybe_infty_cmd(c),
        Cmd::Schurweyl(c) => schurweyl_cmd(c),
        Cmd::Suite { criteria, out, signs } => suite_cmd(criteria, out, signs),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(rep) => {
            println!("{rep}");
            if rep.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
