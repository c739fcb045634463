//! Plain-text rendering of a JSON report: one `path = value` line per leaf,
//! with `[provenance]` appended for tagged values.

use serde_json::Value;

pub fn flatten(report: &Value) -> String {
    let mut out = String::new();
    walk(report, "", &mut out);
    out
}

fn is_scalar_list(items: &[Value]) -> bool {
    items
        .iter()
        .all(|v| !v.is_object() && !matches!(v, Value::Array(a) if !is_scalar_list(a)))
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn walk(v: &Value, path: &str, out: &mut String) {
    match v {
        Value::Object(map) => {
            if let (Some(value), Some(Value::String(prov)), 2) =
                (map.get("value"), map.get("provenance"), map.len())
            {
                out.push_str(&format!("{path} = {} [{prov}]\n", compact(value)));
                return;
            }
            if map.is_empty() {
                out.push_str(&format!("{path} = {{}}\n"));
            }
            for (k, child) in map {
                walk(child, &join(path, k), out);
            }
        }
        Value::Array(items) if is_scalar_list(items) => {
            out.push_str(&format!("{path} = {}\n", compact(v)))
        }
        Value::Array(items) => {
            for (k, child) in items.iter().enumerate() {
                walk(child, &format!("{path}[{k}]"), out);
            }
        }
        other => out.push_str(&format!("{path} = {}\n", compact(other))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn flattens_tagged_and_nested() {
        let v = json!({
            "a": {"value": [1, 2], "provenance": "engine"},
            "b": [{"x": 1}, {"x": "s"}],
            "c": {"3": 4},
            "d": [[1], [2, 3]]
        });
        assert_eq!(
            flatten(&v),
            "a = [1,2] [engine]\nb[0].x = 1\nb[1].x = s\nc.3 = 4\nd = [[1],[2,3]]\n"
        );
    }
}
