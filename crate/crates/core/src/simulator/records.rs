//! Per-epoch CSV stream. Floats are written in Rust's shortest round-trip
//! form, so reading a file back reproduces every value exactly.

use std::io::{self, BufRead, Write};

use crate::error::{Error, Result};
use crate::game::Decision;

use super::EpochRecord;

pub const RECORD_HEADER: &str = "epoch,S_p,b1,b2,shat1,shat2,true_decision,d1,d2,reward,loss1,loss2";

pub struct RecordWriter<W: Write> {
    out: W,
}

impl<W: Write> RecordWriter<W> {
    pub fn new(mut out: W) -> io::Result<Self> {
        writeln!(out, "{RECORD_HEADER}")?;
        Ok(RecordWriter { out })
    }

    pub fn write(&mut self, r: &EpochRecord) -> io::Result<()> {
        writeln!(
            self.out,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            r.epoch,
            r.quality,
            r.bias[0],
            r.bias[1],
            r.estimate[0],
            r.estimate[1],
            r.true_decision.token(),
            r.decisions[0].token(),
            r.decisions[1].token(),
            r.reward,
            r.losses[0],
            r.losses[1]
        )
    }

    pub fn finish(mut self) -> io::Result<W> {
        self.out.flush()?;
        Ok(self.out)
    }
}

fn parse_line(line: &str, number: usize) -> Result<EpochRecord> {
    let bad = |message: String| Error::Csv { line: number, message };
    let fields: Vec<&str> = line.split(',').collect();
    if fields.len() != 12 {
        return Err(bad(format!("expected 12 fields, found {}", fields.len())));
    }
    let float = |i: usize| fields[i].parse::<f64>().map_err(|e| bad(format!("field {i}: {e}")));
    let decision = |i: usize| fields[i].parse::<Decision>().map_err(|e| bad(format!("field {i}: {e}")));
    Ok(EpochRecord {
        epoch: fields[0].parse().map_err(|e| bad(format!("epoch: {e}")))?,
        quality: float(1)?,
        bias: [float(2)?, float(3)?],
        estimate: [float(4)?, float(5)?],
        true_decision: decision(6)?,
        decisions: [decision(7)?, decision(8)?],
        reward: float(9)?,
        losses: [float(10)?, float(11)?],
    })
}

pub fn read_records<R: BufRead>(input: R) -> Result<Vec<EpochRecord>> {
    let mut lines = input.lines().enumerate();
    let header = match lines.next() {
        Some((_, line)) => line.map_err(|e| Error::Csv { line: 1, message: e.to_string() })?,
        None => return Err(Error::Csv { line: 1, message: "missing header".into() }),
    };
    if header.trim_end() != RECORD_HEADER {
        return Err(Error::Csv { line: 1, message: format!("unexpected header {header:?}") });
    }
    let mut out = Vec::new();
    for (i, line) in lines {
        let line = line.map_err(|e| Error::Csv { line: i + 1, message: e.to_string() })?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(parse_line(line.trim_end(), i + 1)?);
    }
    Ok(out)
}
