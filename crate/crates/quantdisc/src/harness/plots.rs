//! Gnuplot script emission for sweep CSVs.

use std::path::Path;

use crate::error::Error;
use crate::Result;

/// CSV families the plotter understands, detected from header columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Schema {
    Real,
    Synth,
    Theory,
    Mc,
}

fn find_col(headers: &[&str], name: &str) -> Option<usize> {
    headers.iter().position(|h| *h == name)
}

fn require_col(headers: &[&str], name: &str) -> Result<usize> {
    find_col(headers, name)
        .ok_or_else(|| Error::Usage(format!("csv schema mismatch: missing column {name}")))
}

fn require_prefixed(headers: &[&str], prefix: &str) -> Result<usize> {
    headers
        .iter()
        .position(|h| h.starts_with(prefix))
        .ok_or_else(|| Error::Usage(format!("csv schema mismatch: missing column {prefix}*")))
}

/// Reads a sweep CSV and writes a self-contained gnuplot script that renders
/// it. The script references the CSV by the given path and is never executed
/// here.
pub fn cmd_emit_plots(csv_path: &Path) -> Result<String> {
    let text = std::fs::read_to_string(csv_path)?;
    let header_line = text
        .lines()
        .next()
        .ok_or(Error::EmptyInput("plot input csv"))?;
    let headers: Vec<&str> = header_line.split(',').collect();

    let schema = if find_col(&headers, "gamma").is_some() {
        Schema::Real
    } else if find_col(&headers, "acc_original").is_some() {
        Schema::Synth
    } else if find_col(&headers, "condition_value").is_some() {
        Schema::Theory
    } else if find_col(&headers, "d_empirical").is_some() {
        Schema::Mc
    } else {
        return Err(Error::Usage(format!(
            "unrecognized csv schema; header was: {header_line}"
        )));
    };

    let csv = csv_path.display();
    let mut script = String::new();
    script.push_str("# gnuplot script emitted by quantdisc\n");
    script.push_str("set datafile separator ','\n");
    script.push_str("set grid\nset key outside\n");

    match schema {
        Schema::Theory => {
            let tau = require_col(&headers, "tau")? + 1;
            let cond = require_col(&headers, "condition_value")? + 1;
            let d0 = require_col(&headers, "d_original")? + 1;
            let dq = require_col(&headers, "d_quantized")? + 1;
            script.push_str("set multiplot layout 2,1\n");
            script.push_str("set xlabel 'tau'\nset ylabel 'condition value'\n");
            script.push_str(&format!(
                "plot '{csv}' skip 1 using {tau}:{cond} with lines lw 2 title 'condition', 0 with lines dashtype 2 lc rgb 'gray' title 'zero'\n"
            ));
            script.push_str("set ylabel 'discrimination'\n");
            script.push_str(&format!(
                "plot '{csv}' skip 1 using {tau}:{d0} with lines title 'original', '{csv}' skip 1 using {tau}:{dq} with lines title 'quantized'\n"
            ));
            script.push_str("unset multiplot\n");
        }
        Schema::Mc => {
            let tau = require_col(&headers, "tau")? + 1;
            let d = require_col(&headers, "d_empirical")? + 1;
            let dq = require_col(&headers, "dq_empirical")? + 1;
            script.push_str("set xlabel 'tau'\nset ylabel 'empirical discrimination'\n");
            script.push_str(&format!(
                "plot '{csv}' skip 1 using {tau}:{d} with lines title 'original', '{csv}' skip 1 using {tau}:{dq} with lines title 'quantized'\n"
            ));
        }
        Schema::Synth => {
            let tau = require_col(&headers, "tau")? + 1;
            let acc0 = require_col(&headers, "acc_original")? + 1;
            let accq = require_col(&headers, "acc_quantized")? + 1;
            let err = require_prefixed(&headers, "quant_error")? + 1;
            script.push_str("set multiplot layout 2,1\n");
            script.push_str("set xlabel 'tau'\nset ylabel 'accuracy'\n");
            script.push_str(&format!(
                "plot '{csv}' skip 1 using {tau}:{accq} with linespoints title 'quantized', '{csv}' skip 1 using {tau}:{acc0} with lines dashtype 2 title 'original'\n"
            ));
            script.push_str("set ylabel 'quantization error'\n");
            script.push_str(&format!(
                "plot '{csv}' skip 1 using {tau}:{err} with lines title 'error'\n"
            ));
            script.push_str("unset multiplot\n");
        }
        Schema::Real => {
            let gamma = require_col(&headers, "gamma")? + 1;
            let acc0 = require_col(&headers, "acc_original")? + 1;
            let accq = require_col(&headers, "acc_quantized")? + 1;
            script.push_str("set xlabel 'gamma'\nset ylabel 'accuracy'\n");
            script.push_str(&format!(
                "plot '{csv}' skip 1 using {gamma}:{accq} with linespoints title 'quantized', '{csv}' skip 1 using {gamma}:{acc0} with lines dashtype 2 title 'original'\n"
            ));
        }
    }
    Ok(script)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_tmp(content: &str) -> (tempfile::TempDir, std::path::PathBuf) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sweep.csv");
        let mut f = std::fs::File::create(&path).unwrap();
        f.write_all(content.as_bytes()).unwrap();
        (dir, path)
    }

    #[test]
    fn theory_schema_draws_zero_line() {
        let (_d, path) = write_tmp("tau,condition_value,d_original,d_quantized\n0,0.01,2.2,2.5\n");
        let script = cmd_emit_plots(&path).unwrap();
        assert!(script.contains("title 'zero'"));
        assert!(script.contains("using 1:2"));
    }

    #[test]
    fn synth_schema_draws_original_line() {
        let (_d, path) = write_tmp(
            "tau,acc_original,acc_quantized,acc_stddev,d_original,d_quantized,condition_value,quant_error_unscaled,repeats\n0,0.9,0.91,0.01,2.2,2.5,0.01,0.3,100\n",
        );
        let script = cmd_emit_plots(&path).unwrap();
        assert!(script.contains("title 'original'"));
        assert!(script.contains("quantization error"));
    }

    #[test]
    fn missing_column_is_named() {
        let (_d, path) = write_tmp("tau,acc_original,acc_stddev\n0,0.9,0.01\n");
        match cmd_emit_plots(&path) {
            Err(Error::Usage(msg)) => assert!(msg.contains("acc_quantized"), "{msg}"),
            other => panic!("expected usage error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_schema_is_rejected() {
        let (_d, path) = write_tmp("a,b,c\n1,2,3\n");
        assert!(matches!(cmd_emit_plots(&path), Err(Error::Usage(_))));
    }
}
