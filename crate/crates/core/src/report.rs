use std::fmt;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckItem {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of a verification suite: a titled list of labelled checks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub title: String,
    pub items: Vec<CheckItem>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), items: Vec::new() }
    }

    pub fn check(&mut self, label: impl Into<String>, passed: bool, detail: impl Into<String>) -> bool {
        self.items.push(CheckItem { label: label.into(), passed, detail: detail.into() });
        passed
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| !i.passed)
    }

    pub fn absorb(&mut self, other: Report) {
        for mut item in other.items {
            item.label = format!("{}: {}", other.title, item.label);
            self.items.push(item);
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failed = self.failures().count();
        writeln!(f, "{}: {} checks, {} failed", self.title, self.items.len(), failed)?;
        for item in &self.items {
            let mark = if item.passed { "ok  " } else { "FAIL" };
            if item.detail.is_empty() {
                writeln!(f, "  {mark} {}", item.label)?;
            } else {
                writeln!(f, "  {mark} {} ({})", item.label, item.detail)?;
            }
        }
        Ok(())
    }
}
