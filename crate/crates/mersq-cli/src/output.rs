//! Renderers for the three output formats. Everything here is a pure
//! function of the typed response, so identical invocations produce
//! byte-identical reports.

use mersq_api::{MersenneExponentRow, MersenneReport, VerifyResponse};
use mersq_core::SolutionSet;
use mersq_core::catalog::{CatalogRow, RowStatus, rows_to_csv};
use serde::Serialize;

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("responses serialize");
    s.push('\n');
    s
}

pub fn solution_set_text(set: &SolutionSet, positive_only: bool, bounds: Option<&str>) -> String {
    let mut out = String::new();
    out.push_str(&format!("equation: {}\n", set.instance.equation()));
    out.push_str(&format!(
        "instance: p={}, q={}, l={}\n",
        set.instance.mp().p(),
        set.instance.mq().p(),
        set.instance.l()
    ));
    if let Some(bounds) = bounds {
        out.push_str(&format!("bounds: {bounds}\n"));
    }
    if set.solutions.is_empty() {
        out.push_str("no solutions\n");
    } else {
        if positive_only {
            out.push_str("solutions (positive only):\n");
        } else {
            out.push_str("solutions:\n");
        }
        for sol in &set.solutions {
            out.push_str(&format!("  {sol}\n"));
        }
    }
    if !set.nonexistence_reasons.is_empty() {
        out.push_str("reasons:\n");
        for reason in &set.nonexistence_reasons {
            out.push_str(&format!("  - {reason}\n"));
        }
    }
    out
}

pub fn solution_set_csv(set: &SolutionSet) -> String {
    let mut out = String::from("x,y,z,case_label\n");
    for sol in &set.solutions {
        let label = sol
            .case_label
            .map(|c| c.to_string())
            .unwrap_or_default();
        out.push_str(&format!("{},{},{},{label}\n", sol.x, sol.y, sol.z));
    }
    out
}

pub fn verify_text(resp: &VerifyResponse) -> String {
    format!(
        "lhs = {}\nrhs = {}\nverified: {}\n",
        resp.lhs, resp.rhs, resp.holds
    )
}

pub fn verify_csv(resp: &VerifyResponse) -> String {
    format!("holds,lhs,rhs\n{},{},{}\n", resp.holds, resp.lhs, resp.rhs)
}

fn status_text(status: &RowStatus) -> String {
    match status {
        RowStatus::Solvable => "Solvable".to_string(),
        RowStatus::Unsolvable { reasons } => {
            let texts: Vec<String> = reasons.iter().map(|r| r.to_string()).collect();
            format!("Unsolvable: {}", texts.join("; "))
        }
        RowStatus::PaperErratum { note } => format!("PaperErratum: {note}"),
    }
}

pub fn rows_text(title: &str, rows: &[CatalogRow]) -> String {
    let header = ["mp", "p", "p+2", "q", "mq", "2^p+1", "l", "(x,y,z)", "status"];
    let mut table: Vec<[String; 9]> = Vec::with_capacity(rows.len());
    for row in rows {
        let solution = row
            .solution
            .as_ref()
            .map(|s| format!("({},{},{})", s.x, s.y, s.z))
            .unwrap_or_else(|| "-".to_string());
        table.push([
            row.mp.to_string(),
            row.p.to_string(),
            row.p_plus_2.to_string(),
            row.q.to_string(),
            row.mq.to_string(),
            row.two_p_plus_1.to_string(),
            row.l.to_string(),
            solution,
            status_text(&row.status),
        ]);
    }
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in &table {
        for (w, cell) in widths.iter_mut().zip(row.iter()) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = format!("{title}\n");
    let render_line = |cells: &[&str], widths: &[usize]| -> String {
        let mut line = String::new();
        for (i, (cell, w)) in cells.iter().zip(widths).enumerate() {
            if i + 1 == cells.len() {
                line.push_str(cell);
            } else {
                line.push_str(&format!("{cell:<w$}  "));
            }
        }
        line.trim_end().to_string()
    };
    out.push_str(&render_line(&header, &widths));
    out.push('\n');
    for row in &table {
        let cells: Vec<&str> = row.iter().map(String::as_str).collect();
        out.push_str(&render_line(&cells, &widths));
        out.push('\n');
    }
    out
}

pub fn rows_csv(rows: &[CatalogRow]) -> String {
    rows_to_csv(rows)
}

pub fn mersenne_report_text(r: &MersenneReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "p = {} ({})\n",
        r.p,
        if r.p_is_prime { "prime" } else { "not prime" }
    ));
    out.push_str(&format!("2^p - 1 = {}\n", r.value));
    out.push_str(&format!("2^p - 1 prime: {}\n", r.value_is_prime));
    out.push_str(&format!("2^p - 1 mod 4 = {}\n", r.mod4_residue));
    if let Some(qs) = &r.admissible_q {
        let rendered: Vec<String> = qs
            .iter()
            .map(|a| format!("{} (M_q={})", a.q, a.mq))
            .collect();
        out.push_str(&format!(
            "admissible q (q | p+2, M_q prime): {}\n",
            if rendered.is_empty() {
                "none".to_string()
            } else {
                rendered.join(", ")
            }
        ));
    }
    if let Some(ls) = &r.admissible_l {
        let rendered: Vec<String> = ls
            .iter()
            .map(|a| format!("{} (z={})", a.l, a.z))
            .collect();
        out.push_str(&format!(
            "admissible l (l | 2^p+1): {}\n",
            if rendered.is_empty() {
                "none".to_string()
            } else {
                rendered.join(", ")
            }
        ));
    }
    out
}

pub fn mersenne_report_csv(r: &MersenneReport) -> String {
    let qs = r
        .admissible_q
        .as_ref()
        .map(|v| {
            v.iter()
                .map(|a| a.q.to_string())
                .collect::<Vec<_>>()
                .join(";")
        })
        .unwrap_or_default();
    let ls = r
        .admissible_l
        .as_ref()
        .map(|v| v.iter().map(|a| a.l.clone()).collect::<Vec<_>>().join(";"))
        .unwrap_or_default();
    format!(
        "p,value,p_is_prime,value_is_prime,mod4_residue,admissible_q,admissible_l\n\
         {},{},{},{},{},{qs},{ls}\n",
        r.p, r.value, r.p_is_prime, r.value_is_prime, r.mod4_residue
    )
}

pub fn mersenne_list_text(rows: &[MersenneExponentRow], p_limit: u32) -> String {
    let mut out = format!("Mersenne prime exponents p <= {p_limit}:\n");
    for row in rows {
        out.push_str(&format!("  p = {:<3} 2^p - 1 = {}\n", row.p, row.value));
    }
    out
}

pub fn mersenne_list_csv(rows: &[MersenneExponentRow]) -> String {
    let mut out = String::from("p,value\n");
    for row in rows {
        out.push_str(&format!("{},{}\n", row.p, row.value));
    }
    out
}
