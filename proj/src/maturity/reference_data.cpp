#include "maturity/reference_data.hpp"

namespace litrepo::maturity {

namespace {

// Reference output: repository list and classification lines.
constexpr std::string_view kUrls[] = {
    "https://github.com/AtlasAnalyticsLab/CPath_Survey",
    "https://github.com/Andoree/smm4h_2021_classification",
    "https://github.com/luoyuanlab/Clinical-Longformer",
    "https://github.com/RyanWangZf/PyTrial",
    "https://github.com/RyanWangZf/Trial2Vec",
    "https://github.com/sigven/oncoEnrichR",
    "https://github.com/ShixiangWang/ezcox",
    "https://github.com/nadeemLab/CIR",
    "https://github.com/ncbi-nlp/BioSentVec",
    "https://github.com/HLTCHKUST/long-biomedical-model",
    "https://github.com/tanlab/ConvolutionMedicalNer",
    "https://github.com/johntiger1/multimodal_fairness",
    "https://github.com/li-xirong/mmc-amd",
    "https://github.com/ritaranx/ClinGen",
    "https://github.com/caoyunkang/CDO",
    "https://github.com/DIAL-RPI/KAMP-Net",
    "https://github.com/williamcaicedo/ISeeU",
    "https://github.com/uf-hobi-informatics-lab/ClinicalTransformerRelationExtraction",
    "https://github.com/HECTA-UoM/ClinicalNMT",
    "https://github.com/haoxuanli-pku/ADRnet",
    "https://github.com/ouyangjiahong/longitudinal-pooling",
    "https://github.com/brudfors/spm_superres",
    "https://github.com/YuDong5018/clinic-lens",
    "https://github.com/tanlab/MIMIC-III-Clinical-Drug-Representations",
    "https://github.com/nlpie-research/Lightweight-Clinical-Transformers",
    "https://github.com/Balasingham-AI-Group/Survival_CPlusClinical",
    "https://github.com/frankkramer-lab/covid19.MISenn",
    "https://github.com/SZUHVern/MGA",
    "https://github.com/ericzhang1/BAGAU-Net",
    "https://github.com/dengzhuo-AI/Real-Fundus",
    "https://github.com/microsoft/attribute-structuring",
};

constexpr ReferenceRow kRows[] = {
    {"AtlasAnalyticsLab", "CPath_Survey", 0, 0, 0, 1, MaturityTier::Low,
     "The project 'CPath_Survey' has a maturity level of Low. It has 0 stars, 0 forks, 0 open issues, and 1 contributors."},
    {"Andoree", "smm4h_2021_classification", 4, 2, 1, 2, MaturityTier::Low,
     "The project 'smm4h_2021_classification' has a maturity level of Low. It has 4 stars, 2 forks, 1 open issues, and 2 contributors."},
    {"luoyuanlab", "Clinical-Longformer", 52, 9, 2, 2, MaturityTier::Medium,
     "The project 'Clinical-Longformer' has a maturity level of Medium. It has 52 stars, 9 forks, 2 open issues, and 2 contributors."},
    {"RyanWangZf", "PyTrial", 62, 9, 3, 2, MaturityTier::Medium,
     "The project 'PyTrial' has a maturity level of Medium. It has 62 stars, 9 forks, 3 open issues, and 2 contributors."},
    {"RyanWangZf", "Trial2Vec", 16, 3, 3, 1, MaturityTier::Low,
     "The project 'Trial2Vec' has a maturity level of Low. It has 16 stars, 3 forks, 3 open issues, and 1 contributors."},
    {"sigven", "oncoEnrichR", 48, 10, 2, 2, MaturityTier::Medium,
     "The project 'oncoEnrichR' has a maturity level of Medium. It has 48 stars, 10 forks, 2 open issues, and 2 contributors."},
    {"ShixiangWang", "ezcox", 20, 2, 0, 2, MaturityTier::Low,
     "The project 'ezcox' has a maturity level of Low. It has 20 stars, 2 forks, 0 open issues, and 2 contributors."},
    {"nadeemLab", "CIR", 21, 6, 0, 3, MaturityTier::Low,
     "The project 'CIR' has a maturity level of Low. It has 21 stars, 6 forks, 0 open issues, and 3 contributors."},
    {"ncbi-nlp", "BioSentVec", 546, 93, 13, 4, MaturityTier::High,
     "The project 'BioSentVec' has a maturity level of High. It has 546 stars, 93 forks, 13 open issues, and 4 contributors."},
    {"HLTCHKUST", "long-biomedical-model", 3, 1, 0, 3, MaturityTier::Low,
     "The project 'long-biomedical-model' has a maturity level of Low. It has 3 stars, 1 forks, 0 open issues, and 3 contributors."},
    {"tanlab", "ConvolutionMedicalNer", 11, 9, 1, 1, MaturityTier::Low,
     "The project 'ConvolutionMedicalNer' has a maturity level of Low. It has 11 stars, 9 forks, 1 open issues, and 1 contributors."},
    {"johntiger1", "multimodal_fairness", 10, 2, 14, 11, MaturityTier::Low,
     "The project 'multimodal_fairness' has a maturity level of Low. It has 10 stars, 2 forks, 14 open issues, and 11 contributors."},
    {"li-xirong", "mmc-amd", 14, 7, 1, 2, MaturityTier::Low,
     "The project 'mmc-amd' has a maturity level of Low. It has 14 stars, 7 forks, 1 open issues, and 2 contributors."},
    {"ritaranx", "ClinGen", 26, 1, 0, 1, MaturityTier::Low,
     "The project 'ClinGen' has a maturity level of Low. It has 26 stars, 1 forks, 0 open issues, and 1 contributors."},
    {"caoyunkang", "CDO", 52, 7, 8, 1, MaturityTier::Medium,
     "The project 'CDO' has a maturity level of Medium. It has 52 stars, 7 forks, 8 open issues, and 1 contributors."},
    {"DIAL-RPI", "KAMP-Net", 12, 6, 0, 2, MaturityTier::Low,
     "The project 'KAMP-Net' has a maturity level of Low. It has 12 stars, 6 forks, 0 open issues, and 2 contributors."},
    {"williamcaicedo", "ISeeU", 25, 8, 0, 1, MaturityTier::Low,
     "The project 'ISeeU' has a maturity level of Low. It has 25 stars, 8 forks, 0 open issues, and 1 contributors."},
    {"uf-hobi-informatics-lab", "ClinicalTransformerRelationExtraction", 116, 23, 11, 1, MaturityTier::High,
     "The project 'ClinicalTransformerRelationExtraction' has a maturity level of High. It has 116 stars, 23 forks, 11 open issues, and 1 contributors."},
    {"HECTA-UoM", "ClinicalNMT", 0, 0, 0, 1, MaturityTier::Low,
     "The project 'ClinicalNMT' has a maturity level of Low. It has 0 stars, 0 forks, 0 open issues, and 1 contributors."},
    {"haoxuanli-pku", "ADRnet", 1, 0, 0, 1, MaturityTier::Low,
     "The project 'ADRnet' has a maturity level of Low. It has 1 stars, 0 forks, 0 open issues, and 1 contributors."},
    {"ouyangjiahong", "longitudinal-pooling", 5, 1, 0, 1, MaturityTier::Low,
     "The project 'longitudinal-pooling' has a maturity level of Low. It has 5 stars, 1 forks, 0 open issues, and 1 contributors."},
    {"brudfors", "spm_superres", 14, 4, 0, 2, MaturityTier::Low,
     "The project 'spm_superres' has a maturity level of Low. It has 14 stars, 4 forks, 0 open issues, and 2 contributors."},
    {"YuDong5018", "clinic-lens", 0, 0, 0, 1, MaturityTier::Low,
     "The project 'clinic-lens' has a maturity level of Low. It has 0 stars, 0 forks, 0 open issues, and 1 contributors."},
};

} // namespace

std::span<const ReferenceRow> reference_rows() { return kRows; }

std::span<const std::string_view> reference_urls() { return kUrls; }

RepoMetrics metrics_of(const ReferenceRow &row) {
  RepoMetrics m;
  m.name = std::string(row.name);
  m.stars = row.stars;
  m.forks = row.forks;
  m.open_issues = row.open_issues;
  m.contributors = row.contributors;
  return m;
}

std::vector<OracleRow> reference_oracle() {
  std::vector<OracleRow> rows;
  for (const auto &row : kRows) {
    rows.push_back({metrics_of(row), row.tier});
  }
  return rows;
}

} // namespace litrepo::maturity
