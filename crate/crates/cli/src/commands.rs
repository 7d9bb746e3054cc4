use anyhow::{anyhow, bail, Context, Result};
use clap::Subcommand;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use latcc::circuit::{
    circuit_to_json, first_non_skew, to_dag, ComparatorCircuit, Trace, Wire,
};
use latcc::formula::{formula_from_json, formula_to_json, spira_reduce, Formula};
use latcc::lowering::{
    all_assignments, boolean_poset, bp_to_skewcc, build_universal, csat_to_cc, distributive_to_boolean, encode_ccvp,
    growing_compile, mcvp_to_cc, normalize_acceptor, skewcc_to_dgap, validate_ccvp, verify_ledger,
};
use latcc::order::{
    birkhoff_repr, dm_completion, find_m3_n5, make_bounded, poset_to_json, search_distributive_embedding,
    DistributiveSearch, Lattice, Poset,
};
use latcc::partition::{checkge_formula, checkgeb_formula, dist_formula, make_partition_lattice, PartitionLattice};

use crate::{dot, load, Global, Report};

#[derive(Subcommand)]
pub enum PosetCmd {
    /// Validate a poset file and summarize it.
    Check {
        #[arg(long)]
        poset: String,
    },
    /// Add a fresh bottom and top.
    Bounded {
        #[arg(long)]
        poset: String,
    },
    /// Dedekind-MacNeille completion.
    Dm {
        #[arg(long)]
        poset: String,
    },
    /// Set labels of a distributive lattice.
    Birkhoff {
        #[arg(long)]
        poset: String,
    },
    /// Is the lattice distributive?
    Distributive {
        #[arg(long)]
        poset: String,
    },
    /// Find an M3 or N5 sublattice.
    M3n5 {
        #[arg(long)]
        poset: String,
    },
    /// Bounded search for a distributive embedding of a bounded poset.
    EmbedSearch {
        #[arg(long)]
        poset: String,
        #[arg(long, default_value_t = 8)]
        max_universe: usize,
    },
}

#[derive(Subcommand)]
pub enum PiCmd {
    /// List the partitions of {1..n}.
    Build { n: usize },
    /// Unary indicator formulas.
    #[command(subcommand)]
    Formula(FormulaCmd),
}

#[derive(Subcommand)]
pub enum FormulaCmd {
    /// Formula that is top at A and below top at B (A not below B).
    Dist {
        #[arg(long)]
        n: usize,
        a: String,
        b: String,
    },
    /// Formula that is top exactly on the elements >= A.
    Ge {
        #[arg(long)]
        n: usize,
        a: String,
    },
    /// Formula that is top on elements >= A and bottom elsewhere.
    Geb {
        #[arg(long)]
        n: usize,
        a: String,
    },
}

#[derive(Subcommand)]
pub enum CcCmd {
    /// Output value over a lattice.
    Eval {
        #[arg(long)]
        circuit: String,
        #[arg(long, default_value = "")]
        input: String,
    },
    /// All reachable output values.
    Outputs {
        #[arg(long)]
        circuit: String,
        #[arg(long, default_value = "")]
        input: String,
    },
    /// Does some evaluation path output the accepting element?
    Accepts {
        #[arg(long)]
        circuit: String,
        #[arg(long, default_value = "")]
        input: String,
    },
    /// Is the circuit skew?
    Skew {
        #[arg(long)]
        circuit: String,
    },
    /// Wire-level DAG form.
    Dag {
        #[arg(long)]
        circuit: String,
    },
    /// Universal circuit for n lines and m gates.
    Universal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Carrier poset; defaults to the two-element lattice.
        #[arg(long)]
        poset: Option<String>,
    },
    /// Bit-string encoding of a circuit over the two-element lattice with its input.
    Encode {
        #[arg(long)]
        circuit: String,
        #[arg(long, default_value = "")]
        input: String,
    },
    /// Decode a bit string back into a circuit.
    Decode {
        bits: String,
    },
}

#[derive(Subcommand)]
pub enum CompileCmd {
    /// Monotone Boolean circuit to a comparator circuit.
    Mcvp {
        #[arg(long)]
        circuit: String,
        /// Check on this many random assignments (all when fewer exist).
        #[arg(long, default_value_t = 0)]
        check: usize,
    },
    /// Boolean circuit to a comparator circuit accepting iff it is satisfiable.
    Csat {
        #[arg(long)]
        circuit: String,
    },
    /// Branching program to a skew comparator circuit.
    Bp {
        #[arg(long)]
        bp: String,
        #[arg(long, default_value_t = 0)]
        check: usize,
    },
    /// Skew circuit over two elements plus an input to a reachability instance.
    Dgap {
        #[arg(long)]
        circuit: String,
        #[arg(long, default_value = "")]
        input: String,
    },
    /// Boolean circuit to a circuit over the partitions of {1..n} with output exactly X or Y.
    Normalize {
        #[arg(long)]
        circuit: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        accept: String,
        #[arg(long)]
        reject: String,
        #[arg(long, default_value_t = 0)]
        check: usize,
    },
    /// Depth reduction of a formula over the partitions of {1..n}.
    Spira {
        #[arg(long)]
        formula: String,
        #[arg(long)]
        n: usize,
        /// Comma-separated input alphabet of the formula.
        #[arg(long, default_value = "0,1")]
        alphabet: String,
    },
    /// Circuit over a distributive lattice to one over two elements.
    Distributive {
        #[arg(long)]
        circuit: String,
    },
    /// Layered Boolean circuit to a circuit over the growing poset family.
    Growing {
        #[arg(long)]
        circuit: String,
        #[arg(long, default_value_t = 0)]
        check: usize,
    },
}

#[derive(Subcommand)]
pub enum VerifyCmd {
    /// Check every entry of an identity ledger against a poset.
    Ledger {
        #[arg(long)]
        poset: String,
        #[arg(long)]
        ledger: String,
    },
}

fn poset_artifact(p: &Poset, g: &Global) -> Report {
    Report::Artifact(if g.dot { dot::poset(p) } else { poset_to_json(p) })
}

fn ids(p: &Poset, items: impl IntoIterator<Item = usize>) -> Vec<String> {
    items.into_iter().map(|e| p.id(e).to_owned()).collect()
}

pub fn poset(cmd: &PosetCmd, g: &Global) -> Result<Report> {
    Ok(match cmd {
        PosetCmd::Check { poset } => {
            let p = load::poset(poset)?;
            let bounded = p.bottom().is_some() && p.top().is_some();
            let lattice = bounded && load::lattice(poset).is_ok();
            let yn = |b: bool| if b { "yes" } else { "no" };
            Report::Info {
                text: format!(
                    "elements: {}\ncovers: {}\nbounded: {}\nlattice: {}",
                    p.len(),
                    p.covers().len(),
                    yn(bounded),
                    yn(lattice)
                ),
                json: json!({"elements": p.len(), "covers": p.covers().len(), "bounded": bounded, "lattice": lattice}),
            }
        }
        PosetCmd::Bounded { poset } => poset_artifact(make_bounded(&load::poset(poset)?).poset(), g),
        PosetCmd::Dm { poset } => poset_artifact(dm_completion(&load::poset(poset)?).0.poset(), g),
        PosetCmd::Birkhoff { poset } => {
            let l = load::lattice(poset)?;
            match birkhoff_repr(&l) {
                Err(_) => Report::Verdict {
                    ok: false,
                    text: "not distributive".into(),
                    json: json!({"distributive": false}),
                },
                Ok(labels) => {
                    let p = l.poset();
                    let irr = ids(p, labels.irreducibles.iter().copied());
                    let rows: Vec<(String, Vec<String>)> = (0..l.len())
                        .map(|e| (p.id(e).to_owned(), ids(p, labels.label(e).ones().map(|k| labels.irreducibles[k]))))
                        .collect();
                    let mut text = format!("join-irreducibles: {}\n", irr.join(" "));
                    for (id, set) in &rows {
                        text.push_str(&format!("{id}: {{{}}}\n", set.join(",")));
                    }
                    let map: serde_json::Map<String, Value> = rows.into_iter().map(|(id, s)| (id, json!(s))).collect();
                    Report::Verdict { ok: true, text, json: json!({"irreducibles": irr, "labels": map}) }
                }
            }
        }
        PosetCmd::Distributive { poset } => {
            let l = load::lattice(poset)?;
            match l.distributivity_violation() {
                None => Report::Verdict { ok: true, text: "distributive".into(), json: json!({"distributive": true}) },
                Some((a, b, c)) => {
                    let w = ids(l.poset(), [a, b, c]);
                    Report::Verdict {
                        ok: false,
                        text: format!("not distributive: {0} ^ ({1} v {2}) != ({0} ^ {1}) v ({0} ^ {2})", w[0], w[1], w[2]),
                        json: json!({"distributive": false, "violation": w}),
                    }
                }
            }
        }
        PosetCmd::M3n5 { poset } => {
            let l = load::lattice(poset)?;
            match find_m3_n5(&l) {
                None => Report::Verdict { ok: false, text: "none".into(), json: json!({"found": false}) },
                Some(w) => {
                    let kind = format!("{:?}", w.kind);
                    let elems = ids(l.poset(), w.elements);
                    Report::Verdict {
                        ok: true,
                        text: format!("{kind}: {}", elems.join(" ")),
                        json: json!({"found": true, "kind": kind, "elements": elems}),
                    }
                }
            }
        }
        PosetCmd::EmbedSearch { poset, max_universe } => {
            let b = load::bounded(poset)?;
            match search_distributive_embedding(&b, *max_universe) {
                DistributiveSearch::ExhaustedBound => Report::Verdict {
                    ok: false,
                    text: format!("no embedding with universe size <= {max_universe}"),
                    json: json!({"found": false, "max_universe": max_universe}),
                },
                DistributiveSearch::Found { universe, labels } => {
                    let rows: Vec<(String, Vec<usize>)> =
                        (0..b.len()).map(|e| (b.id(e).to_owned(), labels[e].ones().collect())).collect();
                    let mut text = format!("universe: {universe}\n");
                    for (id, set) in &rows {
                        let s: Vec<String> = set.iter().map(|k| k.to_string()).collect();
                        text.push_str(&format!("{id}: {{{}}}\n", s.join(",")));
                    }
                    let map: serde_json::Map<String, Value> = rows.into_iter().map(|(id, s)| (id, json!(s))).collect();
                    Report::Verdict { ok: true, text, json: json!({"found": true, "universe": universe, "labels": map}) }
                }
            }
        }
    })
}

fn partition_lattice(n: usize) -> Result<PartitionLattice> {
    make_partition_lattice(n).map_err(|e| anyhow!("{e}"))
}

fn formula_report(f: &Formula, l: &Lattice) -> Report {
    let text = f.display(l).to_string();
    Report::Info {
        json: json!({"formula": text, "size": f.size(), "depth": f.depth()}),
        text,
    }
}

pub fn pi(cmd: &PiCmd, g: &Global) -> Result<Report> {
    Ok(match cmd {
        PiCmd::Build { n } => {
            let pl = partition_lattice(*n)?;
            if g.dot || g.json() {
                poset_artifact(pl.lattice().poset(), g)
            } else {
                let items: Vec<String> = (0..pl.len()).map(|e| pl.lattice().id(e).to_owned()).collect();
                Report::Artifact(items.join("\n"))
            }
        }
        PiCmd::Formula(f) => {
            let (n, f) = match f {
                FormulaCmd::Dist { n, a, b } => {
                    let pl = partition_lattice(*n)?;
                    let (a, b) = (pl.parse(a)?, pl.parse(b)?);
                    (pl.n(), dist_formula(&pl, a, b)?)
                }
                FormulaCmd::Ge { n, a } => {
                    let pl = partition_lattice(*n)?;
                    let a = pl.parse(a)?;
                    (pl.n(), checkge_formula(&pl, a))
                }
                FormulaCmd::Geb { n, a } => {
                    let pl = partition_lattice(*n)?;
                    let a = pl.parse(a)?;
                    (pl.n(), checkgeb_formula(&pl, a))
                }
            };
            formula_report(&f, partition_lattice(n)?.lattice())
        }
    })
}

fn trace_text(c: &ComparatorCircuit, t: &Trace) -> String {
    let p = c.poset();
    let mut out = String::new();
    for (k, state) in t.states.iter().enumerate() {
        let vals: Vec<&str> = state.iter().map(|&e| p.id(e)).collect();
        if k == 0 {
            out.push_str(&format!("init: {}\n", vals.join(" ")));
        } else {
            let (i, j) = c.gates()[k - 1];
            out.push_str(&format!("({i},{j}): {}\n", vals.join(" ")));
        }
    }
    out
}

fn trace_json(c: &ComparatorCircuit, t: &Trace) -> Value {
    let p = c.poset();
    json!(t.states.iter().map(|s| s.iter().map(|&e| p.id(e)).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn circuit_and_word(path: &str, input: &str) -> Result<(ComparatorCircuit, Vec<usize>)> {
    let c = load::circuit(path)?;
    let w = c.parse_word(input)?;
    if w.len() < c.arity() {
        bail!("input has {} symbols, the circuit reads {}", w.len(), c.arity());
    }
    Ok((c, w))
}

pub fn cc(cmd: &CcCmd, g: &Global) -> Result<Report> {
    Ok(match cmd {
        CcCmd::Eval { circuit, input } => {
            let (c, w) = circuit_and_word(circuit, input)?;
            let (out, trace) = c.evaluate_trace(&w)?;
            let id = c.poset().id(out).to_owned();
            let mut text = id.clone();
            let mut v = json!({"output": id});
            if g.trace {
                text = format!("{}output: {text}", trace_text(&c, &trace));
                v["trace"] = trace_json(&c, &trace);
            }
            Report::Info { text, json: v }
        }
        CcCmd::Outputs { circuit, input } => {
            let (c, w) = circuit_and_word(circuit, input)?;
            let outs = ids(c.poset().poset(), c.output_set(&w)?);
            Report::Info { text: outs.join("\n"), json: json!({"outputs": outs}) }
        }
        CcCmd::Accepts { circuit, input } => {
            let (c, w) = circuit_and_word(circuit, input)?;
            let trace = c.witness_trace(&w, c.accept())?;
            let ok = trace.is_some();
            let mut text = if ok { "accept" } else { "reject" }.to_owned();
            let mut v = json!({"accepts": ok});
            if let (true, Some(t)) = (g.trace, &trace) {
                text = format!("{}{text}", trace_text(&c, t));
                v["trace"] = trace_json(&c, t);
            }
            Report::Verdict { ok, text, json: v }
        }
        CcCmd::Skew { circuit } => {
            let c = load::circuit(circuit)?;
            match first_non_skew(&c) {
                None => Report::Verdict { ok: true, text: "skew".into(), json: json!({"skew": true}) },
                Some(gate) => Report::Verdict {
                    ok: false,
                    text: format!("not skew: gate {gate} {:?} has no unused meet input", c.gates()[gate]),
                    json: json!({"skew": false, "gate": gate}),
                },
            }
        }
        CcCmd::Dag { circuit } => {
            let c = load::circuit(circuit)?;
            let d = to_dag(&c);
            if g.dot {
                return Ok(Report::Artifact(dot::dag(&d)));
            }
            let mut text = String::new();
            let mut inputs = Vec::new();
            for (l, a) in d.inputs.iter().enumerate() {
                let ann = dot::annotation(&d.poset, &d.alphabet, a);
                text.push_str(&format!("{} = {ann}\n", Wire::Input(l)));
                inputs.push(ann);
            }
            let mut gates = Vec::new();
            for (k, gate) in d.gates.iter().enumerate() {
                text.push_str(&format!(
                    "{}, {} = {}, {}\n",
                    Wire::And(k),
                    Wire::Or(k),
                    gate.left,
                    gate.right
                ));
                gates.push(json!([gate.left.to_string(), gate.right.to_string()]));
            }
            text.push_str(&format!("output = {}", d.output));
            Report::Info { text, json: json!({"inputs": inputs, "gates": gates, "output": d.output.to_string()}) }
        }
        CcCmd::Universal { n, m, poset } => {
            let p = match poset {
                Some(src) => load::bounded(src)?.into_shared(),
                None => boolean_poset(),
            };
            Report::Artifact(circuit_to_json(&build_universal(*n, *m, p)?))
        }
        CcCmd::Encode { circuit, input } => {
            let (c, w) = circuit_and_word(circuit, input)?;
            Report::Artifact(encode_ccvp(&c, &w)?)
        }
        CcCmd::Decode { bits } => Report::Artifact(circuit_to_json(&validate_ccvp(bits.trim())?.to_circuit())),
    })
}

/// Compares `compiled` with `source` on every assignment when there are at
/// most `k` of them, otherwise on `k` seeded random ones.
fn check_vectors(
    vars: usize,
    k: usize,
    seed: u64,
    source: impl Fn(&[bool]) -> bool,
    compiled: impl Fn(&[bool]) -> Result<bool>,
) -> Result<Option<Vec<bool>>> {
    if k == 0 {
        return Ok(None);
    }
    let vectors = if vars < 20 && 1usize << vars <= k {
        all_assignments(vars)
    } else {
        let mut rng = StdRng::seed_from_u64(seed);
        (0..k).map(|_| (0..vars).map(|_| rng.random_bool(0.5)).collect()).collect()
    };
    for bits in vectors {
        if compiled(&bits)? != source(&bits) {
            return Ok(Some(bits));
        }
    }
    Ok(None)
}

fn word(bits: &[bool]) -> Vec<usize> {
    bits.iter().map(|&b| b as usize).collect()
}

fn checked(c: &ComparatorCircuit, mismatch: Option<Vec<bool>>) -> Result<Report> {
    match mismatch {
        None => Ok(Report::Artifact(circuit_to_json(c))),
        Some(bits) => {
            let s: String = bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
            Ok(Report::Verdict {
                ok: false,
                text: format!("mismatch on input {s}"),
                json: json!({"mismatch": s}),
            })
        }
    }
}

pub fn compile(cmd: &CompileCmd, g: &Global) -> Result<Report> {
    match cmd {
        CompileCmd::Mcvp { circuit, check } => {
            let b = load::boolean(circuit)?;
            let c = mcvp_to_cc(&b)?;
            let m = check_vectors(b.num_vars(), *check, g.seed, |x| b.eval(x), |x| Ok(c.accepts(&word(x))?))?;
            checked(&c, m)
        }
        CompileCmd::Csat { circuit } => Ok(Report::Artifact(circuit_to_json(&csat_to_cc(&load::boolean(circuit)?)?))),
        CompileCmd::Bp { bp, check } => {
            let p = load::branching_program(bp)?;
            let c = bp_to_skewcc(&p)?;
            let m = check_vectors(p.num_vars(), *check, g.seed, |x| p.eval(x), |x| Ok(c.accepts(&word(x))?))?;
            checked(&c, m)
        }
        CompileCmd::Dgap { circuit, input } => {
            let (c, w) = circuit_and_word(circuit, input)?;
            Ok(Report::Artifact(skewcc_to_dgap(&c, &w)?.to_json()))
        }
        CompileCmd::Normalize { circuit, n, accept, reject, check } => {
            let b = load::boolean(circuit)?;
            let pl = partition_lattice(*n)?;
            let (x, y) = (pl.parse(accept)?, pl.parse(reject)?);
            let c = normalize_acceptor(&b, &pl, x, y)?;
            let m = check_vectors(b.num_vars(), *check, g.seed, |v| b.eval(v), |v| {
                let out = c.evaluate(&word(v))?;
                if out != x && out != y {
                    bail!("output {} is neither accept nor reject", pl.lattice().id(out));
                }
                Ok(out == x)
            })?;
            checked(&c, m)
        }
        CompileCmd::Spira { formula, n, alphabet } => {
            let pl = partition_lattice(*n)?;
            let l = pl.lattice();
            let alphabet: Vec<String> = alphabet.split(',').map(|s| s.trim().to_owned()).collect();
            let f = formula_from_json(&load::read(formula)?, l, &alphabet)?;
            let r = spira_reduce(&f, &pl)?;
            eprintln!("size {} -> {}, depth {} -> {}", f.size(), r.size(), f.depth(), r.depth());
            if g.json() {
                Ok(Report::Artifact(formula_to_json(&r, l, &alphabet)?))
            } else {
                Ok(Report::Artifact(r.display(l).to_string()))
            }
        }
        CompileCmd::Distributive { circuit } => {
            let sim = distributive_to_boolean(&load::circuit(circuit)?)?;
            let lines: Vec<String> = sim.outputs.iter().map(|l| l.to_string()).collect();
            eprintln!("label lines: {}", lines.join(" "));
            Ok(Report::Artifact(circuit_to_json(&sim.circuit)))
        }
        CompileCmd::Growing { circuit, check } => {
            let b = load::boolean(circuit)?;
            let c = growing_compile(&b).context("growing family")?.circuit;
            let m = check_vectors(b.num_vars(), *check, g.seed, |x| b.eval(x), |x| Ok(c.accepts(&word(x))?))?;
            checked(&c, m)
        }
    }
}

pub fn verify(cmd: &VerifyCmd, _g: &Global) -> Result<Report> {
    match cmd {
        VerifyCmd::Ledger { poset, ledger } => {
            let p = load::poset(poset)?;
            let l = load::ledger(ledger)?;
            Ok(match verify_ledger(&p, &l) {
                Ok(()) => Report::Verdict {
                    ok: true,
                    text: format!("{} entries hold", l.entries.len()),
                    json: json!({"holds": true, "entries": l.entries.len()}),
                },
                Err(f) => Report::Verdict {
                    ok: false,
                    text: f.to_string(),
                    json: json!({"holds": false, "failure": f.to_string()}),
                },
            })
        }
    }
}
