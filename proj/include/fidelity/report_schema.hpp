#pragma once

#include <string_view>

namespace fidelity {

/// JSON Schema (draft-07) of the report document. Kept byte-identical to
/// schema/report.schema.json; the test suite checks the two agree.
inline constexpr std::string_view kReportSchema = R"SCHEMA({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "$id": "https://example.invalid/fidelity/report.schema.json",
  "title": "Synthetic data fidelity report",
  "version": "1.0.0",
  "type": "object",
  "required": [
    "metadata",
    "metric_definitions",
    "global_metrics",
    "local_metrics"
  ],
  "additionalProperties": false,
  "properties": {
    "metadata": {
      "type": "object",
      "required": [
        "run_id",
        "timestamp",
        "real_dataset_path",
        "synthetic_dataset_path",
        "number_of_samples_real",
        "number_of_samples_synthetic",
        "total_features",
        "numerical_features",
        "binary_categorical_features",
        "multi_categorical_features",
        "total_missing_values",
        "data_completeness (%)",
        "outliers (%)"
      ],
      "properties": {
        "run_id": {
          "type": "string",
          "pattern": "^sdb_[0-9a-f]{12}$"
        },
        "timestamp": {
          "type": "string",
          "pattern": "^[0-9]{4}-[0-9]{2}-[0-9]{2}T[0-9]{2}:[0-9]{2}:[0-9]{2}\\.[0-9]{6}$"
        },
        "real_dataset_path": {
          "type": "string"
        },
        "synthetic_dataset_path": {
          "type": "string"
        },
        "number_of_samples_real": {
          "type": "integer",
          "minimum": 0
        },
        "number_of_samples_synthetic": {
          "type": "integer",
          "minimum": 0
        },
        "total_features": {
          "type": "integer",
          "minimum": 0
        },
        "numerical_features": {
          "type": "integer",
          "minimum": 0
        },
        "binary_categorical_features": {
          "type": "integer",
          "minimum": 0
        },
        "multi_categorical_features": {
          "type": "integer",
          "minimum": 0
        },
        "total_missing_values": {
          "type": "integer",
          "minimum": 0
        },
        "data_completeness (%)": {
          "type": "number",
          "minimum": 0,
          "maximum": 100
        },
        "outliers (%)": {
          "type": "object",
          "additionalProperties": {
            "type": "number",
            "minimum": 0,
            "maximum": 100
          }
        },
        "text_features": {
          "type": "integer",
          "minimum": 0
        },
        "dropped_features": {
          "type": "array",
          "items": {
            "type": "object",
            "required": [
              "feature",
              "reason"
            ],
            "additionalProperties": false,
            "properties": {
              "feature": {
                "type": "string"
              },
              "reason": {
                "type": "string",
                "enum": [
                  "missing-in-synthetic",
                  "kind-mismatch"
                ]
              }
            }
          }
        },
        "synthetic_only_features": {
          "type": "array",
          "items": {
            "type": "string"
          }
        },
        "structural_metrics_computed": {
          "type": "boolean"
        },
        "warnings": {
          "type": "array",
          "items": {
            "type": "string"
          }
        }
      },
      "additionalProperties": false
    },
    "metric_definitions": {
      "type": "object",
      "required": [
        "Kolmogorov–Smirnov (KS) Statistic",
        "Kullback-Leibler Divergence (KLD)",
        "Jensen–Shannon (JS) Divergence (JSD)",
        "Wasserstein Distance (WD)",
        "Hellinger Distance (HD)",
        "Total Variation Distance (TVD)",
        "Range Coverage (RC)",
        "Chi-Square Statistic (CSS)",
        "Category Coverage (CC)",
        "Contingency Table Similarity (CV)",
        "Covariance Matrix Similarity (CMS)",
        "Correlation Matrix Distance (CMD)",
        "Correlation Difference (Pearson) (CDP)",
        "Correlation Difference (Spearman) (CDS)",
        "Mutual Information Difference (MID)",
        "Centered Kernel Alignment (CKA)",
        "Average Wasserstein Embedding Distance (AWED)",
        "Neighbor Overlap (Jaccard Similarity)",
        "Spectral Distance (SD)",
        "Graph Structural Fidelity Score (GSFS)"
      ],
      "additionalProperties": {
        "type": "string"
      }
    },
    "global_metrics": {
      "type": "object",
      "required": [
        "Covariance_Matrix_Similarity_Frobenius",
        "Correlation_Matrix_Distance",
        "Correlation_Difference_Pearson",
        "Correlation_Difference_Spearman",
        "Mutual_Information_Difference"
      ],
      "properties": {
        "Covariance_Matrix_Similarity_Frobenius": {
          "type": [
            "number",
            "null"
          ],
          "minimum": 0
        },
        "Correlation_Matrix_Distance": {
          "type": [
            "number",
            "null"
          ],
          "minimum": 0
        },
        "Correlation_Difference_Pearson": {
          "type": [
            "number",
            "null"
          ],
          "minimum": 0,
          "maximum": 2
        },
        "Correlation_Difference_Spearman": {
          "type": [
            "number",
            "null"
          ],
          "minimum": 0,
          "maximum": 2
        },
        "Mutual_Information_Difference": {
          "type": [
            "number",
            "null"
          ],
          "minimum": 0
        },
        "CKA": {
          "type": "number",
          "minimum": 0,
          "maximum": 1
        },
        "Neighborhood_Overlap": {
          "type": "number",
          "minimum": 0,
          "maximum": 1
        },
        "Spectral_Distance": {
          "type": "number",
          "minimum": 0
        },
        "Avg_Wasserstein_Embedding": {
          "type": "number",
          "minimum": 0
        },
        "GSFS": {
          "type": "number",
          "minimum": 0,
          "maximum": 1
        }
      },
      "additionalProperties": false,
      "dependencies": {
        "CKA": [
          "Neighborhood_Overlap",
          "Spectral_Distance",
          "Avg_Wasserstein_Embedding",
          "GSFS"
        ],
        "Neighborhood_Overlap": [
          "CKA",
          "Spectral_Distance",
          "Avg_Wasserstein_Embedding",
          "GSFS"
        ],
        "Spectral_Distance": [
          "CKA",
          "Neighborhood_Overlap",
          "Avg_Wasserstein_Embedding",
          "GSFS"
        ],
        "Avg_Wasserstein_Embedding": [
          "CKA",
          "Neighborhood_Overlap",
          "Spectral_Distance",
          "GSFS"
        ],
        "GSFS": [
          "CKA",
          "Neighborhood_Overlap",
          "Spectral_Distance",
          "Avg_Wasserstein_Embedding"
        ]
      }
    },
    "local_metrics": {
      "type": "object",
      "additionalProperties": {
        "$ref": "#/definitions/local_metric_block"
      }
    }
  },
  "definitions": {
    "local_metric_block": {
      "type": "object",
      "required": [
        "KS_Statistic",
        "JS_Divergence",
        "KL_Divergence",
        "Wasserstein_Distance",
        "Hellinger_Distance",
        "Total_Variation_Distance",
        "Range_Coverage",
        "Chi_Square_Statistic",
        "Contingency_CramerV",
        "Category_Coverage"
      ],
      "properties": {
        "KS_Statistic": {
          "type": [
            "number",
            "null"
          ],
          "minimum": 0,
          "maximum": 1
        },
        "JS_Divergence": {
          "type": [
            "number",
            "null"
          ],
          "minimum": 0,
          "maximum": 0.69315
        },
        "KL_Divergence": {
          "type": [
            "number",
            "null"
          ],
          "minimum": 0
        },
        "Wasserstein_Distance": {
          "type": [
            "number",
            "null"
          ],
          "minimum": 0
        },
        "Hellinger_Distance": {
          "type": [
            "number",
            "null"
          ],
          "minimum": 0,
          "maximum": 1
        },
        "Total_Variation_Distance": {
          "type": [
            "number",
            "null"
          ],
          "minimum": 0,
          "maximum": 1
        },
        "Range_Coverage": {
          "type": [
            "number",
            "null"
          ],
          "minimum": 0,
          "maximum": 1
        },
        "Chi_Square_Statistic": {
          "type": [
            "number",
            "null"
          ],
          "minimum": 0
        },
        "Contingency_CramerV": {
          "type": [
            "number",
            "null"
          ],
          "minimum": 0
        },
        "Category_Coverage": {
          "type": [
            "number",
            "null"
          ],
          "minimum": 0,
          "maximum": 1
        }
      },
      "additionalProperties": false
    }
  }
}
)SCHEMA";

}  // namespace fidelity
