//! The `ecat` command line. Every run produces a TOML report; results that are
//! structures are appended as an `.ecat` document after the report.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::actions::{check_module, ModuleAction};
use crate::canonical::{
    canonical_braided, canonical_construction, canonical_monoidal, central_self_module,
    extract_monoidal_module, verify_canonical_2functor, Canonical,
};
use crate::centers::{
    compare_e0, e0_center, e0_center_via_module, gamma1, gamma1_of_canonical, gamma2,
    verify_e0_universal, verify_e1_universal, verify_e2_universal, CentralAction, E0Action,
};
use crate::core_cat::{check_category, iso_search, Budget, FinCategory};
use crate::enriched_core::{
    check_enriched_category, pushforward, underlying_category, EnrichedCategory, GlobalSections,
};
use crate::enriched_monoidal::{
    check_enriched_braided, check_enriched_monoidal, check_enriched_symmetric,
    EnrichedBraidedCategory, EnrichedMonoidalCategory,
};
use crate::monoidal_cat::{
    check_braided, check_lax_monoidal_functor, check_lax_monoidal_nat, check_monoidal,
    BraidedStructure,
};

use super::format::{load_str, save_str, Document, FunctorEntry, Names};
use super::report::{digest, Outcome, Report};
use super::WorkbenchError;

/// Environment variable overriding the default search budget.
pub const BUDGET_ENV: &str = "ECAT_BUDGET";

#[derive(Debug, Parser)]
#[command(name = "ecat", version, about = "Finite enriched-category workbench")]
pub struct Cli {
    /// Cap on candidates examined by each exhaustive search.
    #[arg(long, global = true, value_name = "N")]
    pub budget: Option<u64>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every validator that applies to the document's sections.
    Validate { file: PathBuf },
    /// Underlying ordinary category of the `[enriched]` section.
    Underlying { file: PathBuf },
    /// Canonical enriched category of the `[module]` section.
    Canonical { file: PathBuf },
    /// Pushforward of the enriched category in `cat_file` along the functor in `functor_file`.
    Pushforward {
        functor_file: PathBuf,
        cat_file: PathBuf,
    },
    /// Compute a center.
    Center {
        #[command(flatten)]
        which: CenterFlag,
        file: PathBuf,
    },
    /// Check a theorem on a fixture.
    Verify {
        #[arg(long, value_enum)]
        theorem: Theorem,
        fixture: PathBuf,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct CenterFlag {
    #[arg(long)]
    pub e0: bool,
    #[arg(long)]
    pub e1: bool,
    #[arg(long)]
    pub e2: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    E0,
    E1,
    E2,
    Zhcm,
    Gamma2Canonical,
    Correspondences,
    PushforwardUnderlying,
}

/// Exit status and the full text of the report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Execution {
    pub exit_code: i32,
    pub output: String,
    /// Where the output went, if not standard output.
    pub out: Option<PathBuf>,
}

type CommandResult = Result<Option<String>, WorkbenchError>;

struct Session {
    budget: Budget,
    report: Report,
}

impl Session {
    fn read(&mut self, path: &Path) -> Result<Document, WorkbenchError> {
        let shown = path.display().to_string();
        let bytes = std::fs::read(path).map_err(|e| WorkbenchError::Io {
            path: shown.clone(),
            reason: e.to_string(),
        })?;
        self.report.inputs.push(digest(&shown, &bytes));
        let text =
            String::from_utf8(bytes).map_err(|e| WorkbenchError::Parse(format!("{shown}: {e}")))?;
        load_str(&text).map_err(|e| match e {
            WorkbenchError::Parse(m) => WorkbenchError::Parse(format!("{shown}: {m}")),
            other => other,
        })
    }
}

fn require<'a, T>(v: &'a Option<T>, what: &str) -> Result<&'a T, WorkbenchError> {
    v.as_ref()
        .ok_or_else(|| WorkbenchError::Semantic(format!("the input has no {what}")))
}

fn braiding_of(d: &Document) -> Result<&BraidedStructure, WorkbenchError> {
    require(&d.braided, "braided structure")
}

/// An enriched category and, when it was constructed here, the module it came from.
type EnrichedSource = (
    Arc<EnrichedCategory>,
    Option<(Arc<ModuleAction>, Canonical)>,
);

/// The enriched category a command works on: the `[enriched]` section, or the canonical
/// construction of the module (the regular module if none is given).
fn enriched_input(d: &Document, budget: Budget) -> Result<EnrichedSource, WorkbenchError> {
    if let Some(e) = &d.enriched {
        return Ok((e.clone(), None));
    }
    let module = match (&d.module, &d.monoidal) {
        (Some(m), _) => m.clone(),
        (None, Some(m)) => Arc::new(ModuleAction::regular(m)),
        (None, None) => {
            return Err(WorkbenchError::Semantic(
                "the input has no enriched category, module or monoidal category".into(),
            ))
        }
    };
    let canon = canonical_construction(&module, budget)?;
    Ok((canon.category.clone(), Some((module, canon))))
}

/// The enriched monoidal category of the document, or the base enriched in itself.
fn enriched_monoidal_input(
    d: &Document,
    budget: Budget,
) -> Result<Arc<EnrichedMonoidalCategory>, WorkbenchError> {
    if let Some(em) = &d.enriched_monoidal {
        return Ok(em.clone());
    }
    let b = braiding_of(d)?;
    let mm = central_self_module(b, budget)?;
    Ok(Arc::new(canonical_monoidal(&mm, budget)?.1))
}

fn enriched_braided_input(
    d: &Document,
    budget: Budget,
) -> Result<EnrichedBraidedCategory, WorkbenchError> {
    if let Some(eb) = &d.enriched_braided {
        return Ok(eb.clone());
    }
    let b = braiding_of(d)?;
    if !b.symmetric {
        return Err(WorkbenchError::Semantic(
            "a self-enriched braided structure needs a symmetric base".into(),
        ));
    }
    let mm = central_self_module(b, budget)?;
    Ok(canonical_braided(&mm, b, budget)?.1)
}

fn validate(s: &mut Session, file: &Path) -> CommandResult {
    let d = s.read(file)?;
    let r = &mut s.report;
    if let Some(c) = &d.category {
        r.validation("category", &check_category(c));
    }
    if let Some(m) = &d.monoidal {
        r.validation("monoidal", &check_monoidal(m));
    }
    if let Some(b) = &d.braided {
        r.validation("braided", &check_braided(b));
    }
    if let Some(m) = &d.module {
        r.validation("module", &check_module(m));
    }
    if let Some(e) = &d.enriched {
        r.validation("enriched", &check_enriched_category(e));
    }
    if let Some(em) = &d.enriched_monoidal {
        r.validation("enriched_monoidal", &check_enriched_monoidal(em));
    }
    if let Some(eb) = &d.enriched_braided {
        r.validation("enriched_braided", &check_enriched_braided(eb));
        if eb.symmetric {
            r.validation("enriched_symmetric", &check_enriched_symmetric(eb));
        }
    }
    if let Some(FunctorEntry::Lax { functor, .. }) = &d.functor {
        r.validation("functor", &check_lax_monoidal_functor(functor));
    }
    if let Some(t) = &d.nat {
        r.validation("nat", &check_lax_monoidal_nat(t));
    }
    if r.checks.is_empty() {
        return Err(WorkbenchError::Semantic(
            "the document has no sections to validate".into(),
        ));
    }
    Ok(None)
}

fn category_document(
    c: FinCategory,
    objects: &[String],
    morphism_name: impl Fn(usize) -> String,
) -> Document {
    let c = Arc::new(c);
    let names = Names {
        objects: objects.to_vec(),
        morphisms: (0..c.n_mor()).map(morphism_name).collect(),
    };
    Document::from_category(&c, names)
}

fn underlying(s: &mut Session, file: &Path) -> CommandResult {
    let mut d = s.read(file)?;
    d.normalize_names();
    let e = require(&d.enriched, "[enriched] section")?;
    let u = underlying_category(e)?;
    s.report
        .validation("underlying.category", &check_category(&u.cat));
    let out = category_document((*u.cat).clone(), &d.enriched_names, |i| {
        let (x, y, f) = u.elements[i];
        format!(
            "{}->{}:{}",
            d.enriched_names[x], d.enriched_names[y], d.names.morphisms[f]
        )
    });
    Ok(Some(save_str(&out)?))
}

fn canonical(s: &mut Session, file: &Path) -> CommandResult {
    let mut d = s.read(file)?;
    d.normalize_names();
    let module = require(&d.module, "[module] section")?;
    let canon = canonical_construction(module, s.budget)?;
    s.report.validation(
        "canonical.enriched",
        &check_enriched_category(&canon.category),
    );
    let (ident, _) = canon.identification()?;
    s.report.check(
        "canonical.identification",
        ident.is_bijective(),
        "underlying category of the canonical construction is the carrier",
    );
    let out = Document::from_enriched(
        &canon.category,
        d.names.clone(),
        d.carrier_names.objects.clone(),
    );
    Ok(Some(save_str(&out)?))
}

fn pushforward_cmd(s: &mut Session, functor_file: &Path, cat_file: &Path) -> CommandResult {
    let fd = s.read(functor_file)?;
    let mut cd = s.read(cat_file)?;
    cd.normalize_names();
    let e = require(&cd.enriched, "[enriched] section")?;
    match require(&fd.functor, "[functor] section")? {
        FunctorEntry::GlobalSections => {
            if fd.monoidal.as_ref().is_some_and(|m| **m != *e.base) {
                return Err(WorkbenchError::Semantic(
                    "the functor's source is not the enriching base of the category".into(),
                ));
            }
            let set = GlobalSections::new(&e.base).pushforward(e)?;
            let c = set.to_category()?;
            s.report
                .validation("pushforward.category", &check_category(&c));
            let objects = cd.enriched_names.clone();
            let out = category_document(c, &objects, |i| format!("s{i}"));
            Ok(Some(save_str(&out)?))
        }
        FunctorEntry::Lax {
            functor,
            target_names,
        } => {
            if *functor.source != *e.base {
                return Err(WorkbenchError::Semantic(
                    "the functor's source is not the enriching base of the category".into(),
                ));
            }
            let pushed = Arc::new(pushforward(functor, e)?);
            s.report
                .validation("pushforward.enriched", &check_enriched_category(&pushed));
            let out =
                Document::from_enriched(&pushed, target_names.clone(), cd.enriched_names.clone());
            Ok(Some(save_str(&out)?))
        }
    }
}

fn center(s: &mut Session, which: &CenterFlag, file: &Path) -> CommandResult {
    let d = s.read(file)?;
    let budget = s.budget;
    let out = if which.e0 {
        let (e, _) = enriched_input(&d, budget)?;
        let z0 = e0_center(&e, budget)?;
        s.report
            .validation("e0.certificates", &z0.check_certificates());
        s.report
            .validation("e0.enriched_monoidal", &check_enriched_monoidal(&z0.em));
        s.report.check(
            "e0.objects",
            true,
            format!("{} enriched endofunctors", z0.functors.len()),
        );
        Document::from_enriched_monoidal(&z0.em, Names::default(), vec![])
    } else if which.e1 {
        let em = enriched_monoidal_input(&d, budget)?;
        let g1 = gamma1(&em, budget)?;
        s.report
            .validation("e1.certificates", &g1.check_certificates());
        s.report
            .validation("e1.enriched_braided", &check_enriched_braided(&g1.braided));
        for (i, hb) in g1.objects.iter().enumerate() {
            s.report.check(
                format!("e1.object[{i}]"),
                true,
                format!("carrier {} half-braiding {:?}", hb.carrier, hb.components),
            );
        }
        Document::from_enriched_braided(&g1.braided, Names::default(), vec![])
    } else {
        let eb = enriched_braided_input(&d, budget)?;
        let g2 = gamma2(&eb)?;
        s.report
            .validation("e2.enriched_braided", &check_enriched_braided(&g2.braided));
        s.report.check(
            "e2.objects",
            true,
            format!("transparent objects {:?}", g2.objects),
        );
        Document::from_enriched_braided(&g2.braided, Names::default(), vec![])
    };
    Ok(Some(save_str(&out)?))
}

fn verify(s: &mut Session, theorem: Theorem, file: &Path) -> CommandResult {
    let d = s.read(file)?;
    let budget = s.budget;
    let r = &mut s.report;
    match theorem {
        Theorem::E0 => {
            let (e, module) = enriched_input(&d, budget)?;
            let z0 = e0_center(&e, budget)?;
            r.verification(
                "evaluation",
                &verify_e0_universal(&E0Action::evaluation(&z0)?, budget)?,
            );
            r.verification(
                "trivial",
                &verify_e0_universal(&E0Action::trivial(&e)?, budget)?,
            );
            if let Ok(em) = enriched_monoidal_input(&d, budget) {
                r.verification(
                    "regular",
                    &verify_e0_universal(&E0Action::regular(&em)?, budget)?,
                );
            }
            if let Some((module, canon)) = module {
                let via = e0_center_via_module(&module, budget)?;
                r.verification("via_module", &compare_e0(&z0, &via, &canon)?);
            }
        }
        Theorem::E1 => {
            let em = enriched_monoidal_input(&d, budget)?;
            let g1 = gamma1(&em, budget)?;
            r.validation("certificates", &g1.check_certificates());
            r.verification(
                "center_self",
                &verify_e1_universal(&g1, &CentralAction::center_self(&g1)?, budget)?,
            );
            r.verification(
                "trivial",
                &verify_e1_universal(&g1, &CentralAction::trivial(&em)?, budget)?,
            );
            if let Some(eb) = d.enriched_braided.as_ref().filter(|eb| eb.host == *em) {
                r.verification(
                    "regular",
                    &verify_e1_universal(&g1, &CentralAction::regular(eb)?, budget)?,
                );
            }
        }
        Theorem::E2 => {
            let eb = enriched_braided_input(&d, budget)?;
            let g2 = gamma2(&eb)?;
            r.verification(
                "transparent_self",
                &verify_e2_universal(&g2, &CentralAction::transparent_self(&g2, &eb)?, budget)?,
            );
            r.verification(
                "trivial",
                &verify_e2_universal(&g2, &CentralAction::trivial(&eb.host)?, budget)?,
            );
            r.verification(
                "regular",
                &verify_e2_universal(&g2, &CentralAction::regular(&eb)?, budget)?,
            );
        }
        Theorem::Zhcm => {
            let mm = central_self_module(braiding_of(&d)?, budget)?;
            r.verification("gamma1_of_canonical", &gamma1_of_canonical(&mm, budget)?);
        }
        Theorem::Gamma2Canonical => {
            let b = braiding_of(&d)?;
            r.check(
                "base.symmetric",
                b.symmetric,
                "only symmetric bases are covered",
            );
            if b.symmetric {
                let mm = central_self_module(b, budget)?;
                let (_, eb) = canonical_braided(&mm, b, budget)?;
                let g2 = gamma2(&eb)?;
                r.check(
                    "canonical.fixed",
                    g2.braided == eb,
                    format!(
                        "{} of {} objects transparent",
                        g2.objects.len(),
                        eb.host.host.n_obj
                    ),
                );
            }
            if let Some(eb) = d.enriched_braided.as_ref().filter(|eb| eb.symmetric) {
                r.check(
                    "document.fixed",
                    gamma2(eb)?.braided == *eb,
                    "Γ₂ of the document's symmetric category",
                );
            }
        }
        Theorem::Correspondences => {
            let module = match (&d.module, &d.monoidal) {
                (Some(m), _) => m.clone(),
                (None, Some(m)) => Arc::new(ModuleAction::regular(m)),
                (None, None) => {
                    return Err(WorkbenchError::Semantic(
                        "the input has no module or monoidal category".into(),
                    ))
                }
            };
            r.verification(
                "two_functor",
                &verify_canonical_2functor(&[module], budget)?,
            );
            if let Some(b) = &d.braided {
                let mm = central_self_module(b, budget)?;
                let (canon, em) = canonical_monoidal(&mm, budget)?;
                let back = extract_monoidal_module(&canon, &em)?;
                r.check(
                    "monoidal_round_trip",
                    back == mm,
                    "monoidal module recovered from the enriched monoidal structure",
                );
            }
        }
        Theorem::PushforwardUnderlying => {
            let (e, _) = enriched_input(&d, budget)?;
            let pushed = Arc::new(
                GlobalSections::new(&e.base)
                    .pushforward(&e)?
                    .to_category()?,
            );
            let u = underlying_category(&e)?;
            let iso = iso_search(&pushed, &u.cat, budget)?;
            r.check(
                "isomorphic",
                iso.is_some(),
                format!("{} and {} morphisms", pushed.n_mor(), u.cat.n_mor()),
            );
        }
    }
    Ok(None)
}

fn budget_from_env() -> Result<Option<u64>, WorkbenchError> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| WorkbenchError::Usage(format!("{BUDGET_ENV} is not a number: `{v}`"))),
        Err(_) => Ok(None),
    }
}

fn operation_name(c: &Command) -> String {
    match c {
        Command::Validate { .. } => "validate".into(),
        Command::Underlying { .. } => "underlying".into(),
        Command::Canonical { .. } => "canonical".into(),
        Command::Pushforward { .. } => "pushforward".into(),
        Command::Center { which, .. } => format!(
            "center --{}",
            if which.e0 {
                "e0"
            } else if which.e1 {
                "e1"
            } else {
                "e2"
            }
        ),
        Command::Verify { theorem, .. } => {
            let v = theorem.to_possible_value().expect("theorems have names");
            format!("verify --theorem {}", v.get_name())
        }
    }
}

/// Runs a parsed command line and renders its report.
pub fn execute(cli: &Cli) -> Execution {
    let env_budget = budget_from_env();
    let cap = cli
        .budget
        .or_else(|| env_budget.clone().ok().flatten())
        .unwrap_or(Budget::DEFAULT.0);
    let mut s = Session {
        budget: Budget(cap),
        report: Report::new(operation_name(&cli.command), cap),
    };
    let result = match (cli.budget, env_budget) {
        (None, Err(e)) => Err(e),
        _ => match &cli.command {
            Command::Validate { file } => validate(&mut s, file),
            Command::Underlying { file } => underlying(&mut s, file),
            Command::Canonical { file } => canonical(&mut s, file),
            Command::Pushforward {
                functor_file,
                cat_file,
            } => pushforward_cmd(&mut s, functor_file, cat_file),
            Command::Center { which, file } => center(&mut s, which, file),
            Command::Verify { theorem, fixture } => verify(&mut s, *theorem, fixture),
        },
    };
    let mut output = String::new();
    match result {
        Ok(doc) => {
            s.report.conclude();
            output.push_str(&s.report.render());
            if let Some(doc) = doc {
                output.push('\n');
                output.push_str(&doc);
            }
        }
        Err(e) => {
            let code = e.exit_code();
            s.report.fail_with(code, e.to_string());
            if code == 1 {
                s.report.outcome = Outcome::Fail;
            }
            output.push_str(&s.report.render());
        }
    }
    let mut exit_code = s.report.exit_code;
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &output) {
            exit_code = 2;
            output = format!("cannot write {}: {e}\n", path.display());
            return Execution {
                exit_code,
                output,
                out: None,
            };
        }
    }
    Execution {
        exit_code,
        output,
        out: cli.out.clone(),
    }
}

/// Parses `argv` (including the program name) and runs it. Usage errors exit with 2,
/// `--help` and `--version` with 0.
pub fn run<I, T>(argv: I) -> Execution
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => execute(&cli),
        Err(e) => Execution {
            exit_code: if e.use_stderr() { 2 } else { 0 },
            output: e.to_string(),
            out: None,
        },
    }
}
