//! Script execution: declarations build an environment, commands append
//! rows to the report. Deterministic given (script, seed).

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::sync::Arc;

use corr_algebra::{FieldTower, IrreducibilityPolicy, TowerElem, UniPoly};
use corr_ideals::{MultiPoly, PolyRing};
use corr_transfers::corpus::{self, CorpusSize};
use corr_transfers::{
    compose, functoriality_check, radicial_transfer, transfer, AffineVariety, Correspondence,
    CyclePoint, GenericCycle, GroupPlugin, RadicialDatum, TransferOptions,
};

use crate::parser::{Expr, FieldDecl, PluginExpr, Pos, Script, Statement};
use crate::report::{Report, ResultRow, Status};

/// A name-resolution or typing failure: exit code 2 territory.
#[derive(Debug, Clone)]
pub struct ExecError {
    pub pos: Pos,
    pub message: String,
}

impl std::fmt::Display for ExecError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "error at {}: {}", self.pos, self.message)
    }
}

impl std::error::Error for ExecError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IrredMode {
    On,
    Off,
    Auto,
}

#[derive(Debug, Clone, Copy)]
pub struct ExecOptions {
    pub seed: u64,
    pub max_degree: usize,
    pub check_irreducibility: IrredMode,
}

impl Default for ExecOptions {
    fn default() -> Self {
        ExecOptions { seed: 0, max_degree: 6, check_irreducibility: IrredMode::Auto }
    }
}

impl ExecOptions {
    fn policy(&self) -> IrreducibilityPolicy {
        match self.check_irreducibility {
            IrredMode::On => IrreducibilityPolicy::Check,
            IrredMode::Off => IrreducibilityPolicy::Assert,
            IrredMode::Auto => IrreducibilityPolicy::default(),
        }
    }

    fn transfer_options(&self) -> TransferOptions {
        TransferOptions { sympower_degree_bound: self.max_degree }
    }
}

struct Env {
    fields: BTreeMap<String, FieldTower>,
    varieties: BTreeMap<String, Arc<AffineVariety>>,
    corrs: BTreeMap<String, Correspondence>,
    plugins: BTreeMap<String, GroupPlugin>,
}

impl Env {
    fn new() -> Env {
        Env {
            fields: BTreeMap::new(),
            varieties: BTreeMap::new(),
            corrs: BTreeMap::new(),
            plugins: BTreeMap::new(),
        }
    }
}

fn eval_poly(expr: &Expr, ring: &PolyRing, pos: Pos) -> Result<MultiPoly, ExecError> {
    let err = |m: String| ExecError { pos, message: m };
    Ok(match expr {
        Expr::Int(n) => ring.from_i64(*n),
        Expr::Ident(name) => {
            if let Some(i) = ring.var_index(name) {
                ring.var(i)
            } else if let Some(g) = ring.tower().generator_by_name(name) {
                ring.constant(g)
            } else {
                return Err(err(format!("unknown name `{name}` in expression")));
            }
        }
        Expr::Neg(a) => eval_poly(a, ring, pos)?.neg(),
        Expr::Add(a, b) => eval_poly(a, ring, pos)?.add(&eval_poly(b, ring, pos)?),
        Expr::Sub(a, b) => eval_poly(a, ring, pos)?.sub(&eval_poly(b, ring, pos)?),
        Expr::Mul(a, b) => eval_poly(a, ring, pos)?.mul(&eval_poly(b, ring, pos)?),
        Expr::Div(a, b) => {
            let num = eval_poly(a, ring, pos)?;
            let den = eval_poly(b, ring, pos)?;
            if den.total_degree() != Some(0) {
                return Err(err("division is only defined by nonzero constants".into()));
            }
            let c = den.coeff(&vec![0; ring.num_vars()]);
            let inv = c
                .inv()
                .map_err(|_| err("division by zero".into()))?;
            num.mul_elem(&inv)
        }
        Expr::Pow(a, e) => eval_poly(a, ring, pos)?.pow(*e),
    })
}

fn eval_univar(
    expr: &Expr,
    tower: &FieldTower,
    var: &str,
    pos: Pos,
) -> Result<UniPoly, ExecError> {
    let ring = PolyRing::new(tower, &[var]);
    let p = eval_poly(expr, &ring, pos)?;
    let deg = p.degree_in(0).unwrap_or(0) as usize;
    let mut coeffs = vec![tower.zero(); deg + 1];
    for (m, c) in p.terms() {
        coeffs[m[0] as usize] = c.clone();
    }
    Ok(UniPoly::from_coeffs(tower, coeffs))
}

fn resolve_plugin(expr: &PluginExpr, env: &Env, pos: Pos) -> Result<GroupPlugin, ExecError> {
    Ok(match expr {
        PluginExpr::Name(n) => match n.as_str() {
            "Ga" => GroupPlugin::Ga,
            "Gm" => GroupPlugin::Gm,
            other => env
                .plugins
                .get(other)
                .cloned()
                .ok_or_else(|| ExecError {
                    pos,
                    message: format!("unknown plugin `{other}`"),
                })?,
        },
        PluginExpr::Mu(n) => GroupPlugin::MuN(*n),
        PluginExpr::Product(fs) => {
            let mut parts = vec![];
            for f in fs {
                parts.push(resolve_plugin(f, env, pos)?);
            }
            GroupPlugin::Product(parts)
        }
    })
}

fn render_cycle(cycle: &GenericCycle) -> String {
    if cycle.points.is_empty() {
        return "0".to_string();
    }
    let base = &cycle.base;
    let mut parts: Vec<String> = cycle
        .points
        .iter()
        .map(|p: &CyclePoint| {
            let deg = p.field.degree_over(base).map(|d| d.to_string()).unwrap_or("?".into());
            let coords: Vec<String> = p.coords.iter().map(|c| c.render()).collect();
            format!("{}*[deg {}; ({})]", p.mult, deg, coords.join(", "))
        })
        .collect();
    parts.sort();
    parts.join(" + ")
}

fn render_values(values: &[TowerElem]) -> String {
    values.iter().map(|v| v.render()).collect::<Vec<_>>().join(", ")
}

struct Runner {
    env: Env,
    opts: ExecOptions,
    rows: Vec<ResultRow>,
    flags: BTreeSet<String>,
    echoes: Vec<String>,
}

impl Runner {
    fn get_corr(&self, name: &str, pos: Pos) -> Result<&Correspondence, ExecError> {
        self.env.corrs.get(name).ok_or_else(|| ExecError {
            pos,
            message: format!("unknown correspondence `{name}`"),
        })
    }

    fn run_statement(&mut self, stmt: &Statement, pos: Pos) -> Result<(), ExecError> {
        match stmt {
            Statement::Field { name, decl } => {
                if self.env.fields.contains_key(name) {
                    return Err(ExecError {
                        pos,
                        message: format!("field `{name}` is already declared"),
                    });
                }
                let tower = match decl {
                    FieldDecl::Rationals => FieldTower::rationals(),
                    FieldDecl::Prime(p) => FieldTower::prime(*p).map_err(|e| ExecError {
                        pos,
                        message: e.to_string(),
                    })?,
                    FieldDecl::Transcendental { base, vars } => {
                        let mut t = self.lookup_field(base, pos)?.clone();
                        for v in vars {
                            t = t.extend_transcendental(v).map_err(|e| ExecError {
                                pos,
                                message: e.to_string(),
                            })?;
                        }
                        t
                    }
                    FieldDecl::Algebraic { base, gen, min_poly } => {
                        let t = self.lookup_field(base, pos)?.clone();
                        let mp = eval_univar(min_poly, &t, gen, pos)?;
                        let (_, monic) = mp.make_monic();
                        t.extend_algebraic(gen, &monic, self.opts.policy()).map_err(|e| {
                            ExecError { pos, message: e.to_string() }
                        })?
                    }
                };
                for step in tower.unverified_steps() {
                    self.flags.insert(format!(
                        "unverified irreducibility: field step `{step}`"
                    ));
                }
                self.env.fields.insert(name.clone(), tower);
            }
            Statement::Variety { name, field, vars, ideal } => {
                if self.env.varieties.contains_key(name) {
                    return Err(ExecError {
                        pos,
                        message: format!("variety `{name}` is already declared"),
                    });
                }
                let base = self.lookup_field(field, pos)?.clone();
                let variety = if vars.is_empty() {
                    AffineVariety::point(name, &base)
                } else {
                    let var_refs: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
                    let ring = PolyRing::new(&base, &var_refs);
                    let mut gens = vec![];
                    for e in ideal {
                        gens.push(eval_poly(e, &ring, pos)?);
                    }
                    AffineVariety::new(name, &base, &var_refs, gens, self.opts.policy())
                        .map_err(|e| ExecError { pos, message: e.to_string() })?
                };
                for f in variety.flags() {
                    self.flags.insert(format!("variety `{name}`: {f}"));
                }
                self.env.varieties.insert(name.clone(), Arc::new(variety));
            }
            Statement::Corr { name, source, target, components } => {
                if self.env.corrs.contains_key(name) {
                    return Err(ExecError {
                        pos,
                        message: format!("correspondence `{name}` is already declared"),
                    });
                }
                let src = self
                    .env
                    .varieties
                    .get(source)
                    .ok_or_else(|| ExecError {
                        pos,
                        message: format!("unknown variety `{source}`"),
                    })?
                    .clone();
                let tgt = self
                    .env
                    .varieties
                    .get(target)
                    .ok_or_else(|| ExecError {
                        pos,
                        message: format!("unknown variety `{target}`"),
                    })?
                    .clone();
                let mut joint_vars: Vec<&str> = src.ring().vars();
                joint_vars.extend(tgt.ring().vars());
                let joint = PolyRing::new(src.base(), &joint_vars);
                let mut comps = vec![];
                for (m, gens) in components {
                    let mut list = vec![];
                    for g in gens {
                        list.push(eval_poly(g, &joint, pos)?);
                    }
                    comps.push((list, *m));
                }
                let corr = Correspondence::new(name, &src, &tgt, comps)
                    .map_err(|e| ExecError { pos, message: e.to_string() })?;
                let report = corr.validate();
                if !report.all_valid() {
                    let mut reasons = vec![];
                    for (i, c) in report.components.iter().enumerate() {
                        if !c.finite_over_source || !c.integral_generic_fiber {
                            reasons.push(format!(
                                "component {}: {}",
                                i,
                                c.messages.join("; ")
                            ));
                        }
                    }
                    return Err(ExecError {
                        pos,
                        message: format!(
                            "correspondence `{name}` is invalid: {}",
                            reasons.join(" | ")
                        ),
                    });
                }
                for f in report.flags {
                    self.flags.insert(f);
                }
                self.env.corrs.insert(name.clone(), corr);
            }
            Statement::Plugin { name, expr } => {
                if self.env.plugins.contains_key(name) {
                    return Err(ExecError {
                        pos,
                        message: format!("plugin `{name}` is already declared"),
                    });
                }
                let plugin = resolve_plugin(expr, &self.env, pos)?;
                self.env.plugins.insert(name.clone(), plugin);
            }
            Statement::Compose { alpha, beta } => {
                self.echoes.push(format!("compose {alpha} {beta}"));
                let a = self.get_corr(alpha, pos)?.clone();
                let b = self.get_corr(beta, pos)?.clone();
                if a.target().name() != b.source().name() {
                    return Err(ExecError {
                        pos,
                        message: format!(
                            "`{alpha}` ends on `{}` but `{beta}` starts on `{}`",
                            a.target().name(),
                            b.source().name()
                        ),
                    });
                }
                let label = format!("compose {alpha} {beta}");
                match compose(&a, &b) {
                    Ok(cycle) => self.rows.push(ResultRow {
                        label,
                        status: Status::Pass,
                        value: Some(render_cycle(&cycle)),
                    }),
                    Err(e) => self.rows.push(ResultRow {
                        label,
                        status: Status::Fail,
                        value: Some(e.to_string()),
                    }),
                }
            }
            Statement::Transfer { corr, plugin, args } => {
                self.echoes.push(format!("transfer {corr}"));
                let c = self.get_corr(corr, pos)?.clone();
                let p = resolve_plugin(plugin, &self.env, pos)?;
                let ring = PolyRing::new(c.source().base(), &c.target().ring().vars());
                let mut g = vec![];
                for a in args {
                    g.push(eval_poly(a, &ring, pos)?);
                }
                if g.len() != p.arity() {
                    return Err(ExecError {
                        pos,
                        message: format!(
                            "plugin expects {} function(s), got {}",
                            p.arity(),
                            g.len()
                        ),
                    });
                }
                let label = format!("transfer {corr}");
                match transfer(&c, &p, &g, &self.opts.transfer_options()) {
                    Ok(res) => {
                        if !res.regular {
                            self.flags.insert(format!(
                                "transfer {corr}: value has denominators in the designated \
                                 coordinates"
                            ));
                        }
                        self.rows.push(ResultRow {
                            label,
                            status: Status::Pass,
                            value: Some(render_values(&res.values)),
                        })
                    }
                    Err(e) => self.rows.push(ResultRow {
                        label,
                        status: Status::Fail,
                        value: Some(e.to_string()),
                    }),
                }
            }
            Statement::Degree { corr } => {
                self.echoes.push(format!("degree {corr}"));
                let c = self.get_corr(corr, pos)?.clone();
                let label = format!("degree {corr}");
                match c.degree() {
                    Ok(d) => self.rows.push(ResultRow {
                        label,
                        status: Status::Pass,
                        value: Some(d.to_string()),
                    }),
                    Err(e) => self.rows.push(ResultRow {
                        label,
                        status: Status::Fail,
                        value: Some(e.to_string()),
                    }),
                }
            }
            Statement::VerifyFunctoriality { alpha, beta, plugin, args } => {
                self.echoes.push(format!("verify functoriality {alpha} {beta}"));
                let a = self.get_corr(alpha, pos)?.clone();
                let b = self.get_corr(beta, pos)?.clone();
                let p = resolve_plugin(plugin, &self.env, pos)?;
                let ring = PolyRing::new(b.source().base(), &b.target().ring().vars());
                let mut g = vec![];
                for e in args {
                    g.push(eval_poly(e, &ring, pos)?);
                }
                if g.len() != p.arity() {
                    return Err(ExecError {
                        pos,
                        message: format!(
                            "plugin expects {} function(s), got {}",
                            p.arity(),
                            g.len()
                        ),
                    });
                }
                let label = format!("functoriality {alpha} {beta}");
                match functoriality_check(&a, &b, &p, &g, &self.opts.transfer_options()) {
                    Ok(true) => {
                        // Echo the common value as the payload.
                        let composed = compose(&a, &b).unwrap();
                        let v = corr_transfers::transfer_cycle(
                            &composed,
                            &p,
                            &g,
                            &self.opts.transfer_options(),
                        )
                        .map(|r| render_values(&r.values))
                        .unwrap_or_default();
                        self.rows.push(ResultRow {
                            label,
                            status: Status::Pass,
                            value: Some(v),
                        })
                    }
                    Ok(false) => self.rows.push(ResultRow {
                        label,
                        status: Status::Fail,
                        value: Some("sides differ".into()),
                    }),
                    Err(e) => self.rows.push(ResultRow {
                        label,
                        status: Status::Fail,
                        value: Some(e.to_string()),
                    }),
                }
            }
            Statement::VerifyLemmas { seed, size } => {
                self.echoes.push("verify lemmas".to_string());
                let seed = seed.unwrap_or(self.opts.seed);
                let size = match size.as_deref() {
                    None | Some("small") => CorpusSize::Small,
                    Some("medium") => CorpusSize::Medium,
                    Some(other) => {
                        return Err(ExecError {
                            pos,
                            message: format!("unknown size `{other}` (small or medium)"),
                        })
                    }
                };
                for (suite, rows) in corpus::run_all(seed, size) {
                    for r in rows {
                        self.rows.push(ResultRow {
                            label: format!("{suite}: {}", r.label),
                            status: if r.passed { Status::Pass } else { Status::Fail },
                            value: None,
                        });
                    }
                }
                for r in corpus::transfer_additivity_suite(seed) {
                    self.rows.push(ResultRow {
                        label: format!("transfer_additivity: {}", r.label),
                        status: if r.passed { Status::Pass } else { Status::Fail },
                        value: None,
                    });
                }
            }
            Statement::Radicial { corr, plugin, args } => {
                self.echoes.push(format!("radicial {corr}"));
                let c = self.get_corr(corr, pos)?.clone();
                let p = resolve_plugin(plugin, &self.env, pos)?;
                let ring = PolyRing::new(c.source().base(), &c.target().ring().vars());
                let mut g = vec![];
                for e in args {
                    g.push(eval_poly(e, &ring, pos)?);
                }
                let label = format!("radicial {corr}");
                let outcome = RadicialDatum::new(&c).and_then(|datum| {
                    radicial_transfer(&datum, &p, &g, &self.opts.transfer_options())
                });
                match outcome {
                    Ok(res) => self.rows.push(ResultRow {
                        label,
                        status: Status::Pass,
                        value: Some(render_values(&res.values)),
                    }),
                    Err(e) => self.rows.push(ResultRow {
                        label,
                        status: Status::Fail,
                        value: Some(e.to_string()),
                    }),
                }
            }
            Statement::Explain { corr } => {
                self.echoes.push(format!("explain {corr}"));
                let c = self.get_corr(corr, pos)?.clone();
                let label = format!("explain {corr}");
                match c.generic_fiber() {
                    Ok(cycle) => {
                        let desc = format!(
                            "over {}: {}",
                            cycle.base,
                            render_cycle(&cycle)
                        );
                        self.rows.push(ResultRow {
                            label,
                            status: Status::Pass,
                            value: Some(desc),
                        })
                    }
                    Err(e) => self.rows.push(ResultRow {
                        label,
                        status: Status::Fail,
                        value: Some(e.to_string()),
                    }),
                }
            }
        }
        Ok(())
    }

    fn lookup_field(&self, name: &str, pos: Pos) -> Result<&FieldTower, ExecError> {
        self.env.fields.get(name).ok_or_else(|| ExecError {
            pos,
            message: format!("unknown field `{name}`"),
        })
    }
}

/// Execute a parsed script; declaration and name errors abort (exit code
/// 2), command failures become failing rows (exit code 1).
pub fn execute(script: &Script, opts: &ExecOptions) -> Result<Report, ExecError> {
    let mut runner = Runner {
        env: Env::new(),
        opts: *opts,
        rows: vec![],
        flags: BTreeSet::new(),
        echoes: vec![],
    };
    for (stmt, pos) in &script.statements {
        runner.run_statement(stmt, *pos)?;
    }
    Ok(Report {
        command: runner.echoes.join("; "),
        results: runner.rows,
        flags: runner.flags.into_iter().collect(),
    })
}
