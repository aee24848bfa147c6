use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use nilsum::limit::{LimitElement, LimitError, LimitRing};
use nilsum::nilpotency::{
    hessenberg_reduce, power_entry_identity, single_row_decide, SingleRowDecision,
};
use nilsum::nilsum::{
    decompose_trace_zero, trace_obstruction, zero_diagonal_similarity, NilSumWitness, TraceVerdict,
};
use nilsum::ring::{parse_corpus, report_ring, RingReport, DEFAULT_CORPUS};
use nilsum::text::parse_matrix;
use nilsum::{ExactMatrix, Quaternion, ScalarDomain};
use serde_json::{json, Value};

use crate::report::{element_json, matrix_json, verify_witness, Outcome, Report};

const ZERO_DIAGONAL_RULES: &str = "conjugate to zero diagonal one index at a time: pivot on the \
first column at or after the index with an off-diagonal entry, otherwise add the first column \
with a different diagonal entry; split into strictly lower + strictly upper parts";

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_matrix(path: &Path) -> Result<ExactMatrix, String> {
    parse_matrix(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn witness_text(input: &ExactMatrix, w: &NilSumWitness) -> String {
    format!(
        "input   {input} over {}\nfirst   {}  (nilpotent, index {})\nsecond  {}  (nilpotent, index {})\n\
         verified: first + second = input, both powers vanish\n",
        input.domain(),
        w.first,
        w.first_cert.index,
        w.second,
        w.second_cert.index,
    )
}

fn witness_report(
    input: &ExactMatrix,
    inputs: Value,
    w: &NilSumWitness,
    method: &str,
    extra: Value,
) -> Result<Report, String> {
    let verification = verify_witness(input, w)?;
    let mut result = json!({
        "decomposable": true,
        "method": method,
        "first": matrix_json(&w.first),
        "second": matrix_json(&w.second),
        "first_index": w.first_cert.index,
        "second_index": w.second_cert.index,
    });
    if let (Value::Object(r), Value::Object(e)) = (&mut result, extra) {
        r.extend(e);
    }
    Ok(Report {
        command: "decompose".into(),
        outcome: Outcome::Success,
        inputs,
        result,
        verification,
        text: witness_text(input, w),
    })
}

pub fn decompose(path: &Path, single_row: Option<usize>) -> Result<Report, String> {
    let a = read_matrix(path)?;
    let inputs = json!({
        "file": path.display().to_string(),
        "matrix": matrix_json(&a),
        "single_row": single_row,
    });
    if let Some(k) = single_row {
        if k == 0 {
            return Err("rows are numbered from 1".into());
        }
        return match single_row_decide(&a, k - 1).map_err(|e| e.to_string())? {
            SingleRowDecision::Decomposable(w) => {
                witness_report(&a, inputs, &w, "single-row", json!({}))
            }
            SingleRowDecision::Obstructed { row, diagonal } => {
                let recomputed = a.get(row, row);
                if recomputed != diagonal || recomputed.is_zero() {
                    return Err("diagonal entry failed re-verification".into());
                }
                Ok(Report {
                    command: "decompose".into(),
                    outcome: Outcome::Obstruction,
                    inputs,
                    result: json!({
                        "decomposable": false,
                        "method": "single-row",
                        "row": row + 1,
                        "diagonal": diagonal.to_string(),
                    }),
                    verification: json!({ "diagonal_recomputed": true }),
                    text: format!(
                        "input   {a} over {}\nnot a sum of two nilpotents: the only nonzero row is {} and a_{}{} = {} != 0\n",
                        a.domain(),
                        row + 1,
                        row + 1,
                        row + 1,
                        diagonal
                    ),
                })
            }
        };
    }
    if !a.is_square() {
        return Err(format!("matrix is {}x{}, not square", a.rows(), a.cols()));
    }
    if a.is_zero() {
        let w = NilSumWitness::certify(&a, a.clone(), a.clone()).map_err(|e| e.to_string())?;
        return witness_report(&a, inputs, &w, "zero", json!({}));
    }
    if a.domain().is_commutative() {
        if let TraceVerdict::Obstructed { trace } =
            trace_obstruction(&a).map_err(|e| e.to_string())?
        {
            let recomputed = a.trace().map_err(|e| e.to_string())?;
            if recomputed != trace || recomputed.is_nilpotent() {
                return Err("trace failed re-verification".into());
            }
            return Ok(Report {
                command: "decompose".into(),
                outcome: Outcome::Obstruction,
                inputs,
                result: json!({
                    "decomposable": false,
                    "method": "trace",
                    "trace": trace.to_string(),
                }),
                verification: json!({ "trace_recomputed": true, "trace_nilpotent": false }),
                text: format!(
                    "input   {a} over {}\nnot a sum of two nilpotents: trace {trace} is not nilpotent\n",
                    a.domain()
                ),
            });
        }
    }
    if !a.domain().is_field() {
        return Err(format!(
            "no decision procedure over {} for a matrix whose trace is nilpotent",
            a.domain()
        ));
    }
    let w = decompose_trace_zero(&a).map_err(|e| e.to_string())?;
    let s = zero_diagonal_similarity(&a).map_err(|e| e.to_string())?;
    if !s.verify(&a) {
        return Err("similarity failed re-verification".into());
    }
    witness_report(
        &a,
        inputs,
        &w,
        "zero-diagonal similarity",
        json!({
            "conjugator": matrix_json(&s.conjugator),
            "zero_diagonal": matrix_json(&s.zero_diagonal),
            "rules": ZERO_DIAGONAL_RULES,
        }),
    )
}

/// Splits off an optional `level n` header and checks it against
/// `--level` and the matrix size.
fn read_limit_input(path: &Path, level: Option<u32>) -> Result<(ExactMatrix, u32), String> {
    let text = read(path)?;
    let mut header = None;
    let mut body = String::new();
    let mut seen_content = false;
    for line in text.lines() {
        let content = line.split('#').next().unwrap_or("").trim();
        if !seen_content && content.starts_with("level") {
            let n = content["level".len()..]
                .trim()
                .parse::<u32>()
                .map_err(|_| format!("bad level line `{content}`"))?;
            header = Some(n);
            seen_content = true;
        } else {
            seen_content |= !content.is_empty();
            body.push_str(line);
            body.push('\n');
        }
    }
    let m = parse_matrix(&body).map_err(|e| format!("{}: {e}", path.display()))?;
    let n = m.rows();
    if !n.is_power_of_two() || m.cols() != n {
        return Err(format!(
            "matrix is {}x{}, not 2^n x 2^n",
            m.rows(),
            m.cols()
        ));
    }
    let actual = n.trailing_zeros();
    for claimed in [header, level].into_iter().flatten() {
        if claimed != actual {
            return Err(format!(
                "level {claimed} does not match a {n}x{n} matrix (level {actual})"
            ));
        }
    }
    Ok((m, actual))
}

fn limit_err(e: LimitError) -> String {
    e.to_string()
}

pub fn limit_decompose(
    ring: &LimitRing,
    path: &Path,
    level: Option<u32>,
) -> Result<Report, String> {
    let (m, input_level) = read_limit_input(path, level)?;
    let e = ring.canonicalize(&m).map_err(limit_err)?;
    let inputs = json!({
        "file": path.display().to_string(),
        "level": input_level,
        "matrix": matrix_json(&m),
        "max_level": ring.max_level(),
    });
    let dec = match ring.two_nilgood_decompose(&e) {
        Ok(dec) => dec,
        Err(LimitError::CentralUnit) => {
            return Ok(Report {
                command: "limit decompose".into(),
                outcome: Outcome::Obstruction,
                inputs,
                result: json!({ "decomposable": false, "reason": "the identity is a central unit" }),
                verification: json!({ "is_identity": e.is_one() }),
                text: "not a sum of two nilpotents: the identity is a central unit\n".into(),
            })
        }
        Err(err) => return Err(limit_err(err)),
    };
    let top = dec.working_level.max(e.level());
    let lift = |x: &LimitElement| ring.lift(x, top).map_err(limit_err);
    let (a, b) = (lift(&dec.first)?, lift(&dec.second)?);
    let sum_ok = a.add(&b).map_err(|e| e.to_string())? == lift(&e)?;
    let vanish = |m: &ExactMatrix, k: usize| m.pow(k as u32).is_ok_and(|p| p.is_zero());
    let first_ok = vanish(&a, dec.first_index);
    let second_ok = vanish(&b, dec.second_index);
    if !(sum_ok && first_ok && second_ok) {
        return Err("limit witness failed re-verification".into());
    }
    let text = format!(
        "input   {e}\nworking level {}\nfirst   {}  (nilpotent, index {})\nsecond  {}  (nilpotent, index {})\n\
         verified at level {top}: first + second = input, both powers vanish\n",
        dec.working_level, dec.first, dec.first_index, dec.second, dec.second_index
    );
    Ok(Report {
        command: "limit decompose".into(),
        outcome: Outcome::Success,
        inputs,
        result: json!({
            "decomposable": true,
            "canonical": element_json(&e),
            "working_level": dec.working_level,
            "first": element_json(&dec.first),
            "second": element_json(&dec.second),
            "first_index": dec.first_index,
            "second_index": dec.second_index,
        }),
        verification: json!({
            "checked_at_level": top,
            "sum_equals_input": sum_ok,
            "first_power_vanishes": first_ok,
            "second_power_vanishes": second_ok,
        }),
        text,
    })
}

pub fn limit_canon(ring: &LimitRing, path: &Path, level: Option<u32>) -> Result<Report, String> {
    let (m, input_level) = read_limit_input(path, level)?;
    let e = ring.canonicalize(&m).map_err(limit_err)?;
    let lifts_back = ring.lift(&e, input_level).map_err(limit_err)? == m;
    if !lifts_back {
        return Err("canonical form failed re-verification".into());
    }
    Ok(Report {
        command: "limit canon".into(),
        outcome: Outcome::Success,
        inputs: json!({ "file": path.display().to_string(), "level": input_level, "matrix": matrix_json(&m) }),
        result: json!({ "canonical": element_json(&e) }),
        verification: json!({ "lifts_back_to_input": true }),
        text: format!("{e}\n"),
    })
}

pub fn limit_mul(ring: &LimitRing, left: &Path, right: &Path) -> Result<Report, String> {
    let (lm, _) = read_limit_input(left, None)?;
    let (rm, _) = read_limit_input(right, None)?;
    let a = ring.canonicalize(&lm).map_err(limit_err)?;
    let b = ring.canonicalize(&rm).map_err(limit_err)?;
    let product = ring.mul(&a, &b).map_err(limit_err)?;
    // Recompute at the larger input level.
    let top = lm.rows().max(rm.rows()).trailing_zeros();
    let direct = ring
        .lift(&a, top)
        .and_then(|x| Ok(x.mul(&ring.lift(&b, top)?)?))
        .map_err(limit_err)?;
    if ring.canonicalize(&direct).map_err(limit_err)? != product {
        return Err("product failed re-verification".into());
    }
    Ok(Report {
        command: "limit mul".into(),
        outcome: Outcome::Success,
        inputs: json!({ "left": element_json(&a), "right": element_json(&b) }),
        result: json!({ "product": element_json(&product) }),
        verification: json!({ "recomputed_at_level": top }),
        text: format!("{product}\n"),
    })
}

pub fn corpus(config: Option<&Path>, seed: u64) -> Result<Report, String> {
    let text = match config {
        Some(path) => read(path)?,
        None => DEFAULT_CORPUS.to_string(),
    };
    let rings = parse_corpus(&text).map_err(|e| match config {
        Some(path) => format!("{}: {e}", path.display()),
        None => e.to_string(),
    })?;
    let results: Vec<Result<RingReport, String>> = std::thread::scope(|s| {
        let handles: Vec<_> = rings
            .iter()
            .map(|r| {
                s.spawn(move || {
                    r.verify_axioms(seed).map_err(|e| e.to_string())?;
                    Ok(report_ring(r))
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| {
                h.join()
                    .unwrap_or_else(|_| Err("ring analysis panicked".into()))
            })
            .collect()
    });
    let reports = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    let all_consistent = reports.iter().all(RingReport::consistent);

    let mut text = format!(
        "{:<18} {:>5}  {:<5}  {:<16} {:<22} {:<9} {}\n",
        "ring", "size", "holds", "counterexample", "minimal types", "checklist", "consistent"
    );
    for r in &reports {
        let checklist = if !r.lemma21.hypothesis_holds {
            "n/a"
        } else if r.lemma21.passed() {
            "pass"
        } else {
            "FAIL"
        };
        let _ = writeln!(
            text,
            "{:<18} {:>5}  {:<5}  {:<16} {:<22} {:<9} {}",
            r.ring,
            r.size,
            r.holds,
            r.counterexample.as_deref().unwrap_or("-"),
            r.minimal_types.to_string(),
            checklist,
            if r.consistent() { "yes" } else { "NO" }
        );
    }
    let _ = writeln!(
        text,
        "{} rings, {}",
        reports.len(),
        if all_consistent {
            "all consistent"
        } else {
            "INCONSISTENCIES FOUND"
        }
    );
    Ok(Report {
        command: "corpus".into(),
        outcome: if all_consistent {
            Outcome::Success
        } else {
            Outcome::Failure
        },
        inputs: json!({
            "config": config.map_or_else(|| "default".to_string(), |p| p.display().to_string()),
            "rings": reports.len(),
            "seed": seed,
        }),
        result: json!({ "rings": reports }),
        verification: json!({ "axioms_verified": true, "all_consistent": all_consistent }),
        text,
    })
}

pub fn quaternion_demo() -> Result<Report, String> {
    let d = ScalarDomain::Quaternion;
    let q = |a, b, c, e| d.quaternion(Quaternion::from_ints(a, b, c, e));
    let build = |rows: Vec<Vec<nilsum::Scalar>>| {
        ExactMatrix::from_rows(&d, rows).map_err(|e| e.to_string())
    };
    let a = build(vec![
        vec![q(0, 1, 0, 0), q(0, 0, 1, 0)],
        vec![q(0, 0, -1, 0), q(0, 1, 0, 0)],
    ])?;
    let u = build(vec![
        vec![q(1, 0, 0, 0), q(0, 0, 0, 0)],
        vec![q(0, 0, 0, 1), q(1, 0, 0, 0)],
    ])?;
    let expected = build(vec![
        vec![q(0, 0, 0, 0), q(0, 0, 1, 0)],
        vec![q(0, 0, 0, 0), q(0, 0, 0, 0)],
    ])?;
    let err = |e: nilsum::AlgebraError| e.to_string();
    let u_inv = u.inverse().map_err(err)?;
    let square = a.mul(&a).map_err(err)?;
    let trace = a.trace().map_err(err)?;
    let conj = u.mul(&a).map_err(err)?.mul(&u_inv).map_err(err)?;
    let conj_trace = conj.trace().map_err(err)?;
    let checks = [
        ("square_is_zero", square.is_zero()),
        ("trace_is_2i", trace == q(0, 2, 0, 0)),
        ("conjugate_matches", conj == expected),
        ("conjugate_trace_is_zero", conj_trace.is_zero()),
    ];
    if let Some((name, _)) = checks.iter().find(|(_, ok)| !ok) {
        return Err(format!("quaternion check `{name}` failed"));
    }
    let text = format!(
        "A           = {a}\nA^2         = {square}\ntrace(A)    = {trace}  (not nilpotent)\n\
         U           = {u}\nU^-1        = {u_inv}\nU A U^-1    = {conj}\ntrace(UAU^-1) = {conj_trace}\n\
         Over a noncommutative ring the trace is not a similarity invariant.\n"
    );
    Ok(Report {
        command: "quaternion-demo".into(),
        outcome: Outcome::Success,
        inputs: json!({ "a": matrix_json(&a), "u": matrix_json(&u) }),
        result: json!({
            "square": matrix_json(&square),
            "trace": trace.to_string(),
            "u_inverse": matrix_json(&u_inv),
            "conjugate": matrix_json(&conj),
            "conjugate_trace": conj_trace.to_string(),
        }),
        verification: Value::Object(
            checks
                .iter()
                .map(|(k, v)| (k.to_string(), json!(v)))
                .collect(),
        ),
        text,
    })
}

pub fn hessenberg(path: &Path) -> Result<Report, String> {
    let x = read_matrix(path)?;
    let h = hessenberg_reduce(&x).map_err(|e| e.to_string())?;
    h.verify(&x).map_err(|e| e.to_string())?;
    let k = h.block_size;
    let leading = h.reduced.block(0, k, 0, k);
    let mut identities = Vec::new();
    for j in 1..=k {
        let (observed, predicted) = power_entry_identity(&leading, j).map_err(|e| e.to_string())?;
        if observed != predicted {
            return Err(format!("power-entry identity fails at k = {j}"));
        }
        identities.push(json!({ "k": j, "entry": observed.to_string() }));
    }
    let text = format!(
        "input     {x} over {}\nU         {}\nU X U^-1  {}\nleading block size {k}\n\
         verified: U = diag(1, V), U X U^-1 recomputed, unit subdiagonal in the leading block, \
         (k,1) entry of the k-th power equals a_11 + ... + a_kk for k <= {k}\n",
        x.domain(),
        h.transform,
        h.reduced,
    );
    Ok(Report {
        command: "hessenberg".into(),
        outcome: Outcome::Success,
        inputs: json!({ "file": path.display().to_string(), "matrix": matrix_json(&x) }),
        result: json!({
            "transform": matrix_json(&h.transform),
            "reduced": matrix_json(&h.reduced),
            "block_size": k,
            "power_entries": identities,
            "rules": "pivot on the first nonzero entry of each subcolumn",
        }),
        verification: json!({ "invariants": true, "power_entry_identity": true }),
        text,
    })
}
