//! Result table rendering: aligned text table, CSV, JSON.

use crate::query::ResultTable;
use crate::store::PropertyValue;

/// Plain cell text. Floats keep a fractional digit so they stay
/// recognizable; nulls render empty.
pub fn cell_text(value: &PropertyValue) -> String {
    match value {
        PropertyValue::Null => String::new(),
        other => other.to_string(),
    }
}

pub fn to_table(table: &ResultTable) -> String {
    let mut widths: Vec<usize> = table.columns.iter().map(String::len).collect();
    let rows: Vec<Vec<String>> = table
        .rows
        .iter()
        .map(|row| row.iter().map(cell_text).collect())
        .collect();
    for row in &rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    let render_row = |cells: &[String], widths: &[usize]| -> String {
        cells
            .iter()
            .zip(widths)
            .map(|(cell, width)| format!("{:<width$}", cell, width = width))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    out.push_str(&render_row(&table.columns, &widths));
    out.push('\n');
    out.push_str(
        &widths
            .iter()
            .map(|w| "-".repeat(*w))
            .collect::<Vec<_>>()
            .join("  "),
    );
    out.push('\n');
    for row in &rows {
        out.push_str(&render_row(row, &widths));
        out.push('\n');
    }
    out.push_str(&format!(
        "({} row{})\n",
        table.rows.len(),
        if table.rows.len() == 1 { "" } else { "s" }
    ));
    out
}

pub fn to_csv(table: &ResultTable) -> Result<String, csv::Error> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(&table.columns)?;
    for row in &table.rows {
        writer.write_record(row.iter().map(|v| cell_text(v)))?;
    }
    let bytes = writer.into_inner().expect("vec sink never fails");
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn to_json(table: &ResultTable) -> serde_json::Value {
    serde_json::json!({
        "columns": table.columns,
        "rows": table
            .rows
            .iter()
            .map(|row| row.iter().map(PropertyValue::to_json).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}
