//! One pretty-printed JSON file per worked example, named after its id.
//! Object keys are sorted so the files diff cleanly.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde_json::json;

use poset_operads::worked::{worked_examples, Status, WorkedExample};

use crate::output::Rendered;

fn render(e: &WorkedExample) -> String {
    // Through `Value` so object keys come out sorted.
    let v = serde_json::to_value(e).expect("examples serialize");
    let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
    s.push('\n');
    s
}

pub fn run(dir: &Path, bless: bool) -> Result<Rendered> {
    let examples = worked_examples()?;
    if bless {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    let mut passed = true;
    for e in &examples {
        let path = dir.join(format!("{}.json", e.id));
        let fresh = render(e);
        let golden = if bless {
            fs::write(&path, &fresh).with_context(|| format!("writing {}", path.display()))?;
            "blessed"
        } else {
            match fs::read_to_string(&path) {
                Ok(old) if old == fresh => "same",
                Ok(_) => "differs",
                Err(_) => "missing",
            }
        };
        let status = serde_json::to_value(e.status)?;
        let status = status.as_str().unwrap_or_default().to_owned();
        passed &= e.ok() && matches!(golden, "same" | "blessed");
        rows.push(vec![
            e.id.clone(),
            e.group.to_owned(),
            status.clone(),
            golden.to_owned(),
        ]);
        entries.push(json!({"id": e.id, "group": e.group, "status": status, "golden": golden}));
    }
    // Files left behind by removed examples.
    let ids: BTreeSet<String> = examples.iter().map(|e| format!("{}.json", e.id)).collect();
    if let Ok(listing) = fs::read_dir(dir) {
        for f in listing.flatten() {
            let name = f.file_name().to_string_lossy().into_owned();
            if name.ends_with(".json") && !ids.contains(&name) {
                passed = false;
                rows.push(vec![name.clone(), String::new(), String::new(), "stale".to_owned()]);
                entries.push(json!({"id": name, "golden": "stale"}));
            }
        }
    }
    let known = examples.iter().filter(|e| e.status == Status::KnownDiscrepancy).count();
    let doc = json!({"passed": passed, "known_discrepancies": known, "examples": entries});
    let r = Rendered::table(doc, &["id", "group", "status", "golden"], rows);
    Ok(if passed { r } else { r.failed() })
}
