//! Command-line front end. Exit codes: 0 success or true verdict, 1 false
//! verdict, 2 usage, parse or input errors.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cfrac::{contract, expand};
use crate::error::{Error, Result};
use crate::expr::parse_expr;
use crate::logcvx::{
    check_gf_criterion, check_riordan, check_stieltjes, check_thm_main, explore_conjecture,
    is_m_q_log_convex, l2_l3_identity_check, CriterionVerdict, Order,
};
use crate::poly::Poly;
use crate::posmat::{hankel, is_q_tp, TpMode};
use crate::seqspec::{boros_moll_poly, family_spec, riordan_params, CoeffSeqSpec, FamilyId, JacobiSpec, StieltjesSpec};
use crate::triangle::{generate, row_genfun_transform};

#[derive(Debug, Parser)]
#[command(name = "qlogcvx", version, about = "Polynomial sequences from tridiagonal recurrences and continued fractions, with q-log-convexity checks")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    All,
    Contiguous,
}

impl From<ModeArg> for TpMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::All => TpMode::All,
            ModeArg::Contiguous => TpMode::Contiguous,
        }
    }
}

/// Where the coefficient sequences come from.
#[derive(Debug, Clone, Default, Args)]
pub struct SpecArgs {
    /// Catalogued family id.
    #[arg(long)]
    pub family: Option<String>,
    /// JSON spec file.
    #[arg(long, value_name = "PATH")]
    pub spec_file: Option<PathBuf>,
    /// Generic g_k as an expression in k and q.
    #[arg(long, value_name = "EXPR", requires = "h")]
    pub g: Option<String>,
    /// Generic h_k as an expression in k and q.
    #[arg(long, value_name = "EXPR", requires = "g")]
    pub h: Option<String>,
    /// Override for g_0.
    #[arg(long, value_name = "EXPR")]
    pub g0: Option<String>,
    /// Override for some h_k, as `k:EXPR`.
    #[arg(long, value_name = "K:EXPR")]
    pub hexc: Vec<String>,
    /// Generic t_{2k-1} of an S-fraction.
    #[arg(long, value_name = "EXPR", requires = "t_even")]
    pub t_odd: Option<String>,
    /// Generic t_{2k} of an S-fraction.
    #[arg(long, value_name = "EXPR", requires = "t_odd")]
    pub t_even: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// First terms of the sequence.
    Expand {
        #[command(flatten)]
        spec: SpecArgs,
        /// Number of terms.
        #[arg(long, default_value_t = 10)]
        n: usize,
    },
    /// Rows 0..=n of the triangular array.
    Triangle {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 5)]
        n: usize,
    },
    /// Row generating functions of the constant-coefficient triangle (e, g, h).
    Rowgf {
        /// One of aigner, shapiro, schroeder_triangle.
        #[arg(long)]
        family: Option<String>,
        #[arg(long, value_name = "EXPR")]
        e: Option<String>,
        #[arg(long, value_name = "EXPR")]
        g: Option<String>,
        #[arg(long, value_name = "EXPR")]
        h: Option<String>,
        #[arg(long, default_value_t = 6)]
        n: usize,
    },
    /// Contracts an S-fraction spec to a J-fraction spec.
    Contract {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Sufficient-condition criteria.
    Criterion {
        #[command(subcommand)]
        which: CriterionCmd,
    },
    /// Checks m-q-log-convexity of a sequence.
    Logconvex {
        #[command(flatten)]
        spec: SpecArgs,
        /// Read terms from stdin: the JSON printed by `expand`, or an array.
        #[arg(long)]
        stdin: bool,
        #[arg(long, default_value_t = 20)]
        n: usize,
        /// Number of L-operator levels.
        #[arg(long, short = 'm', default_value_t = 3)]
        order: usize,
    },
    /// q-TP_r check of a Hankel window.
    Tp {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 6)]
        window: usize,
        #[arg(long, default_value_t = 0)]
        offset: usize,
        #[arg(long, default_value_t = 4)]
        order: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::All)]
        mode: ModeArg,
    },
    /// Determinant of a Hankel window.
    HankelDet {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 4)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        offset: usize,
    },
    /// Checks the L^2 and L^3 Hankel determinant identities at index k.
    IdentityCheck {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// Random search on Hankel L-images.
    Explore {
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        window: usize,
        #[arg(long, default_value_t = 1)]
        order: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum CriterionCmd {
    /// Conditions on g_k, h_k.
    ThmMain {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 3)]
        order: usize,
        #[arg(long, default_value_t = 20)]
        kmax: usize,
    },
    /// ge >= rh for a numeric triangle.
    Riordan {
        #[arg(long)]
        family: Option<String>,
        #[arg(long, value_name = "EXPR")]
        e: Option<String>,
        #[arg(long, value_name = "EXPR")]
        g: Option<String>,
        #[arg(long, value_name = "EXPR")]
        h: Option<String>,
        #[arg(long, default_value_t = 3)]
        order: usize,
    },
    /// Inequalities on the closed-form parameters (a, s, t).
    Gf {
        #[arg(long, value_name = "EXPR")]
        a: String,
        #[arg(long, value_name = "EXPR")]
        s: String,
        #[arg(long, value_name = "EXPR")]
        t: String,
        #[arg(long, default_value_t = 3)]
        order: usize,
    },
    /// t_n >=_q 0 for an S-fraction.
    Stieltjes {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 20)]
        kmax: usize,
    },
}

/// What a subcommand produced.
struct Outcome {
    json: Value,
    plain: String,
    csv: Option<String>,
    verdict: Option<bool>,
}

impl Outcome {
    fn data<T: Serialize>(value: &T, plain: String) -> Result<Outcome> {
        Ok(Outcome {
            json: serde_json::to_value(value)?,
            plain,
            csv: None,
            verdict: None,
        })
    }

    fn verdict<T: Serialize>(value: &T, verdict: bool, plain: String) -> Result<Outcome> {
        let mut o = Outcome::data(value, plain)?;
        o.verdict = Some(verdict);
        Ok(o)
    }
}

fn poly(text: &str) -> Result<Poly> {
    Ok(parse_expr(text)?.to_poly()?)
}

fn parse_family(name: &str) -> Result<FamilyId> {
    name.parse()
}

impl SpecArgs {
    fn label(&self) -> String {
        self.family.clone().unwrap_or_else(|| "custom".into())
    }

    fn resolve(&self) -> Result<CoeffSeqSpec> {
        let sources = [
            self.family.is_some(),
            self.spec_file.is_some(),
            self.g.is_some(),
            self.t_odd.is_some(),
        ];
        match sources.iter().filter(|&&b| b).count() {
            0 => return Err(Error::InvalidSpec("give --family, --spec-file, --g/--h or --t-odd/--t-even".into())),
            1 => {}
            _ => return Err(Error::InvalidSpec("give exactly one spec source".into())),
        }
        let overrides = self.g0.is_some() || !self.hexc.is_empty();
        if overrides && self.g.is_none() {
            return Err(Error::InvalidSpec("--g0 and --hexc only apply with --g/--h".into()));
        }
        if let Some(name) = &self.family {
            return family_spec(parse_family(name)?);
        }
        if let Some(path) = &self.spec_file {
            return CoeffSeqSpec::from_json(&std::fs::read_to_string(path)?);
        }
        if let (Some(t_odd), Some(t_even)) = (&self.t_odd, &self.t_even) {
            return Ok(StieltjesSpec::new(t_odd, t_even)?.into());
        }
        let (g, h) = (self.g.as_deref().unwrap_or_default(), self.h.as_deref().unwrap_or_default());
        let mut spec = JacobiSpec::new(g, h)?;
        if let Some(g0) = &self.g0 {
            spec = spec.with_g(0, poly(g0)?);
        }
        for item in &self.hexc {
            let (k, expr) = item
                .split_once(':')
                .ok_or_else(|| Error::InvalidSpec(format!("--hexc expects k:EXPR, got `{item}`")))?;
            let k: usize = k
                .trim()
                .parse()
                .map_err(|_| Error::InvalidSpec(format!("bad index in --hexc `{item}`")))?;
            if k == 0 {
                return Err(Error::InvalidSpec("h is indexed from 1".into()));
            }
            spec = spec.with_h(k, poly(expr)?);
        }
        Ok(spec.into())
    }

    /// `0..=n_max`, with the Boros-Moll family served by its closed form.
    fn terms(&self, n_max: usize) -> Result<Vec<Poly>> {
        if let Some(name) = &self.family {
            if parse_family(name)? == FamilyId::BorosMoll {
                return Ok((0..=n_max).map(boros_moll_poly).collect());
            }
        }
        expand(&self.resolve()?, n_max)
    }
}

fn terms_plain(terms: &[Poly]) -> String {
    terms
        .iter()
        .enumerate()
        .map(|(n, t)| format!("{n}: {t}\n"))
        .collect()
}

fn terms_csv(terms: &[Poly]) -> String {
    let mut out = String::from("n,term\n");
    for (n, t) in terms.iter().enumerate() {
        out.push_str(&format!("{n},\"{t}\"\n"));
    }
    out
}

fn verdict_plain(v: &CriterionVerdict) -> String {
    let mut s = format!("{}: {}\n", v.criterion, v.verdict);
    if let Some(w) = &v.witness {
        match w.k {
            Some(k) => s.push_str(&format!("fails at k = {k}: {} = {}\n", w.condition, w.residual)),
            None => s.push_str(&format!("fails: {} = {}\n", w.condition, w.residual)),
        }
    }
    for r in &v.symbolic {
        s.push_str(&format!("{} (k >= {}): {}\n", r.condition, r.valid_from, r.residual));
    }
    if let Some(note) = &v.note {
        s.push_str(&format!("note: {note}\n"));
    }
    s
}

fn riordan_triple(family: &Option<String>, e: &Option<String>, g: &Option<String>, h: &Option<String>) -> Result<(Poly, Poly, Poly)> {
    match (family, e, g, h) {
        (Some(name), None, None, None) => {
            let id = parse_family(name)?;
            let (e, g, h) = riordan_params(id)
                .ok_or_else(|| Error::InvalidSpec(format!("{id} is not a constant-coefficient triangle")))?;
            Ok((Poly::from_int(e), Poly::from_int(g), Poly::from_int(h)))
        }
        (None, Some(e), Some(g), Some(h)) => Ok((poly(e)?, poly(g)?, poly(h)?)),
        _ => Err(Error::InvalidSpec("give --family or all of --e, --g, --h".into())),
    }
}

fn read_stdin_terms(input: &mut dyn Read) -> Result<Vec<Poly>> {
    let mut text = String::new();
    input.read_to_string(&mut text)?;
    let value: Value = serde_json::from_str(&text)?;
    let terms = match value {
        Value::Object(mut map) => map
            .remove("terms")
            .ok_or_else(|| Error::InvalidSpec("stdin object has no `terms`".into()))?,
        other => other,
    };
    Ok(serde_json::from_value(terms)?)
}

fn execute(cmd: Command, stdin: &mut dyn Read) -> Result<Outcome> {
    match cmd {
        Command::Expand { spec, n } => {
            let terms = spec.terms(n)?;
            let mut o = Outcome::data(&json!({ "family": spec.label(), "terms": terms }), terms_plain(&terms))?;
            o.csv = Some(terms_csv(&terms));
            Ok(o)
        }
        Command::Triangle { spec, n } => {
            let t = generate(&spec.resolve()?, n)?;
            let plain = t
                .rows()
                .iter()
                .map(|r| r.iter().map(Poly::to_string).collect::<Vec<_>>().join(", ") + "\n")
                .collect();
            let mut o = Outcome::data(&json!({ "family": spec.label(), "rows": t.rows() }), plain)?;
            o.csv = Some(t.to_csv());
            Ok(o)
        }
        Command::Rowgf { family, e, g, h, n } => {
            let (e, g, h) = riordan_triple(&family, &e, &g, &h)?;
            let terms = row_genfun_transform(&e, &g, &h, n)?.first_column();
            let mut o = Outcome::data(
                &json!({ "e": e, "g": g, "h": h, "terms": terms }),
                terms_plain(&terms),
            )?;
            o.csv = Some(terms_csv(&terms));
            Ok(o)
        }
        Command::Contract { spec } => {
            let j = contract(&spec.resolve()?)?;
            let text = j.to_json();
            Ok(Outcome {
                json: serde_json::from_str(&text)?,
                plain: text + "\n",
                csv: None,
                verdict: None,
            })
        }
        Command::Criterion { which } => {
            let v = match which {
                CriterionCmd::ThmMain { spec, order, kmax } => {
                    check_thm_main(&spec.resolve()?, Order::from_level(order)?, kmax)?
                }
                CriterionCmd::Riordan { family, e, g, h, order } => {
                    let (e, g, h) = riordan_triple(&family, &e, &g, &h)?;
                    check_riordan(&e, &g, &h, order)?
                }
                CriterionCmd::Gf { a, s, t, order } => {
                    check_gf_criterion(&poly(&a)?, &poly(&s)?, &poly(&t)?, Order::from_level(order)?)
                }
                CriterionCmd::Stieltjes { spec, kmax } => check_stieltjes(&spec.resolve()?, kmax)?,
            };
            Outcome::verdict(&v, v.verdict, verdict_plain(&v))
        }
        Command::Logconvex { spec, stdin: from_stdin, n, order } => {
            let terms = if from_stdin { read_stdin_terms(stdin)? } else { spec.terms(n)? };
            let r = is_m_q_log_convex(&terms, order);
            let mut plain = format!(
                "{}-q-log-convex: {} (levels checked: {})\n",
                order, r.verdict, r.depth_checked
            );
            if let Some(f) = &r.failure {
                plain.push_str(&format!("level {} index {}: {}\n", f.level, f.index, f.value));
            }
            Outcome::verdict(&r, r.verdict, plain)
        }
        Command::Tp { spec, window, offset, order, mode } => {
            let terms = spec.terms(offset + 2 * window)?;
            let r = is_q_tp(&hankel(&terms, window, offset)?, order, mode.into())?;
            let mut plain = format!("q-TP_{order} on {window}x{window} window ({}): {}\n", r.mode, r.verdict);
            if let Some(w) = &r.witness {
                plain.push_str(&format!("rows {:?} cols {:?}: {}\n", w.rows, w.cols, w.minor));
            }
            Outcome::verdict(&r, r.verdict, plain)
        }
        Command::HankelDet { spec, size, offset } => {
            let terms = spec.terms(offset + 2 * size)?;
            let det = hankel(&terms, size, offset)?.det()?;
            Outcome::data(&json!({ "size": size, "offset": offset, "det": det }), format!("{det}\n"))
        }
        Command::IdentityCheck { spec, k } => {
            let terms = spec.terms(k + 4)?;
            let c = l2_l3_identity_check(&terms, k)?;
            let plain = format!("k = {k}: L^2 {:?}, L^3 {:?}\n", c.l2, c.l3);
            Outcome::verdict(&c, c.holds(), plain)
        }
        Command::Explore { trials, seed, window, order } => {
            let r = explore_conjecture(trials, seed, window, order)?;
            let plain = format!(
                "{trials} trials, seed {seed}, window {window}, order {order}: {} candidates, {} hypothesis failures\n",
                r.candidates.len(),
                r.hypothesis_failures.len()
            );
            Outcome::data(&r, plain)
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let format = cli.format;
    match execute(cli.command, stdin) {
        Ok(o) => {
            let body = match format {
                Format::Json => serde_json::to_string_pretty(&o.json).expect("JSON values serialize") + "\n",
                Format::Csv => o.csv.unwrap_or(o.plain),
                Format::Plain => o.plain,
            };
            if out.write_all(body.as_bytes()).is_err() {
                return 2;
            }
            match o.verdict {
                Some(false) => 1,
                _ => 0,
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
