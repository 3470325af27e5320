use std::path::Path;

use super::dataset::Dataset;
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// Loads a numeric CSV with a header row. `target_column` names the target;
/// every other column is a feature. Rows are split into train/test with a
/// seeded shuffle.
pub fn load_csv(path: &Path, target_column: &str, train_fraction: f64, seed: u64) -> Result<Dataset> {
    let csv_err = |row: usize, column: &str, message: String| Error::Csv {
        path: path.to_path_buf(),
        row,
        column: column.to_string(),
        message,
    };
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| match e.into_kind() {
            csv::ErrorKind::Io(io) => Error::io(path, io),
            other => csv_err(0, "", format!("{other:?}")),
        })?;
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| csv_err(1, "", e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    let target_idx = header
        .iter()
        .position(|h| h == target_column)
        .ok_or_else(|| csv_err(1, target_column, "target column not found in header".into()))?;

    let mut columns: Vec<Vec<f64>> = vec![Vec::new(); header.len() - 1];
    let mut target = Vec::new();
    for (i, record) in reader.records().enumerate() {
        // header is line 1
        let row = i + 2;
        let record = record.map_err(|e| csv_err(row, "", e.to_string()))?;
        if record.len() != header.len() {
            return Err(csv_err(
                row,
                "",
                format!("expected {} fields, found {}", header.len(), record.len()),
            ));
        }
        let mut feature = 0;
        for (col, field) in record.iter().enumerate() {
            let value: f64 = field
                .parse()
                .ok()
                .filter(|v: &f64| v.is_finite())
                .ok_or_else(|| csv_err(row, &header[col], format!("`{field}` is not a finite number")))?;
            if col == target_idx {
                target.push(value);
            } else {
                columns[feature].push(value);
                feature += 1;
            }
        }
    }
    if target.is_empty() {
        return Err(Error::NoDataRows {
            path: path.to_path_buf(),
        });
    }
    let names = header
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != target_idx)
        .map(|(_, h)| h.clone())
        .collect();
    Dataset::new(Matrix::from_columns(columns)?, target, names)?.with_split(train_fraction, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn file(text: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(text.as_bytes()).unwrap();
        f
    }

    #[test]
    fn three_rows_all_train() {
        let f = file("a,b,y\n1,2,3\n4,5,6\n7,8,9\n");
        let d = load_csv(f.path(), "y", 1.0, 0).unwrap();
        assert_eq!(d.rows(), 3);
        assert_eq!(d.train_rows().len(), 3);
        assert_eq!(d.feature_names(), ["a", "b"]);
        assert_eq!(d.target(), [3.0, 6.0, 9.0]);
        assert_eq!(d.features().column(1), [2.0, 5.0, 8.0]);
    }

    #[test]
    fn target_may_be_any_column() {
        let f = file("y,a\n1,2\n3,4\n");
        let d = load_csv(f.path(), "y", 1.0, 0).unwrap();
        assert_eq!(d.target(), [1.0, 3.0]);
        assert_eq!(d.features().column(0), [2.0, 4.0]);
    }

    #[test]
    fn header_only_is_an_error() {
        let f = file("a,b,y\n");
        let err = load_csv(f.path(), "y", 1.0, 0).unwrap_err();
        assert!(err.to_string().contains("no data rows"), "{err}");
    }

    #[test]
    fn errors_name_row_and_column() {
        let f = file("a,b,y\n1,2,3\n4,oops,6\n");
        let err = load_csv(f.path(), "y", 1.0, 0).unwrap_err().to_string();
        assert!(err.contains("row 3") && err.contains("column b"), "{err}");

        let f = file("a,b,y\n1,2,3\n4,5\n");
        let err = load_csv(f.path(), "y", 1.0, 0).unwrap_err().to_string();
        assert!(err.contains("row 3"), "{err}");

        let f = file("a,b\n1,2\n");
        assert!(load_csv(f.path(), "y", 1.0, 0).is_err());
        assert!(matches!(
            load_csv(Path::new("/nonexistent/file.csv"), "y", 1.0, 0),
            Err(Error::Io { .. })
        ));
    }
}
