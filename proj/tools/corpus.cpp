#include "corpus.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mimostab::cli {

namespace {

// The corpus text. Coefficient lists ascend in s; string coefficients are
// expressions over the item's parameters, substituted before reduction.
const char* kCorpusJson = R"CORPUS(
[
{
  "name": "hidden_mode_p1",
  "system": {
    "name": "hidden_mode_p1", "rows": 3, "cols": 3,
    "entries": [
      [{"num": [1], "den": [1, 1]}, {"num": [1], "den": [2, 1]}, {"num": [1], "den": [-1, 1]}],
      [{"num": [0], "den": [1]},    {"num": [2], "den": [2, 1]}, {"num": [1], "den": [1, 1]}],
      [{"num": [0], "den": [1]},    {"num": [0], "den": [1]},    {"num": [2, 1], "den": [-1, 1]}]
    ]
  },
  "checks": [
    {"check": "theorem1", "expect": {"status": "stable", "hidden_mode": false, "unstable_pole_count": 1}},
    {"check": "direct", "expect": {"status": "stable"}}
  ]
},
{
  "name": "hidden_mode_p2",
  "system": {
    "name": "hidden_mode_p2", "rows": 3, "cols": 3,
    "entries": [
      [{"num": [1], "den": [1, 1]}, {"num": [1], "den": [-1, 1]}, {"num": [1], "den": [2, 1]}],
      [{"num": [0], "den": [1]},    {"num": [2], "den": [2, 1]},  {"num": [1], "den": [1, 1]}],
      [{"num": [0], "den": [1]},    {"num": [0], "den": [1]},     {"num": [2, 1], "den": [-1, 1]}]
    ]
  },
  "checks": [
    {"check": "theorem1", "expect": {"status": "unstable", "hidden_mode": true, "unstable_pole_count": 2}},
    {"check": "direct", "expect": {"status": "unstable", "witnesses": [{"re": 1.0, "im": 0.0, "tol": 1e-8}]}}
  ]
},
{
  "name": "hidden_mode_pair",
  "system": {"name": "hidden_mode_p1", "rows": 3, "cols": 3,
    "entries": [
      [{"num": [1], "den": [1, 1]}, {"num": [1], "den": [2, 1]}, {"num": [1], "den": [-1, 1]}],
      [{"num": [0], "den": [1]},    {"num": [2], "den": [2, 1]}, {"num": [1], "den": [1, 1]}],
      [{"num": [0], "den": [1]},    {"num": [0], "den": [1]},    {"num": [2, 1], "den": [-1, 1]}]
    ]},
  "second_system": {"name": "hidden_mode_p2", "rows": 3, "cols": 3,
    "entries": [
      [{"num": [1], "den": [1, 1]}, {"num": [1], "den": [-1, 1]}, {"num": [1], "den": [2, 1]}],
      [{"num": [0], "den": [1]},    {"num": [2], "den": [2, 1]},  {"num": [1], "den": [1, 1]}],
      [{"num": [0], "den": [1]},    {"num": [0], "den": [1]},     {"num": [2, 1], "den": [-1, 1]}]
    ]},
  "checks": [
    {"check": "det_ip_pair_equal", "expect": {"tol": 1e-8,
      "num": [4, 9, 2], "den": [-1, 0, 1]}},
    {"check": "det_p_pair_equal", "expect": {"tol": 1e-8,
      "num": [2], "den": [-1, 0, 1]}}
  ]
},
{
  "name": "loop_gain_2x2",
  "system": {
    "name": "loop_gain_2x2", "rows": 2, "cols": 2,
    "entries": [
      [{"num": [0], "den": [1]},      {"num": [1], "den": [1]}],
      [{"num": [-3, 3], "den": [1, 1]}, {"num": [-3], "den": [1]}]
    ]
  },
  "checks": [
    {"check": "direct", "expect": {"status": "unstable", "witnesses": [{"re": 0.2, "im": 0.0, "tol": 1e-8}]}},
    {"check": "det_value", "expect": {"num": [1, -5], "den": [1, 1], "tol": 1e-8}},
    {"check": "det_nyquist", "expect": {"status": "unstable", "winding_abs": 1}},
    {"check": "gnc", "expect": {"status": "unstable", "merged_curves": 1,
                                 "branch_closed": [false, false], "merged_winding_abs": 1}}
  ]
},
{
  "name": "coupled_wide_margins",
  "system": {
    "name": "coupled_wide_margins", "rows": 2, "cols": 2,
    "parameters": {"b": 100},
    "entries": [
      [{"num": ["2+b", "1+b"], "den": [2, 3, 1]}, {"num": ["b"], "den": [2, 1]}],
      [{"num": ["-b"], "den": [2, 1]}, {"num": ["2-b", "1-b"], "den": [2, 3, 1]}]
    ]
  },
  "checks": [
    {"check": "direct", "expect": {"status": "stable"}},
    {"check": "gnc", "expect": {"status": "stable"}},
    {"check": "margins", "expect": {"k1": "zero", "k2": "inf", "theta1": 2.356194490192345, "tol": 0.01}},
    {"check": "perturbed", "U": {"rows": 2, "cols": 2,
      "entries": [[{"num": ["(b-4)/(b+4)"], "den": [1]}, {"num": [0], "den": [1]}],
                   [{"num": [0], "den": [1]}, {"num": [1], "den": [1]}]],
      "parameters": {"b": 100}},
     "expect": {"status": "unstable"}},
    {"check": "loci_param_independent", "param": "b", "values": [7, 100],
     "expect": {"max_deviation": 1e-8}}
  ]
},
{
  "name": "triangular_offdiag",
  "system": {
    "name": "triangular_offdiag", "rows": 2, "cols": 2,
    "parameters": {"b": 100},
    "entries": [
      [{"num": [1], "den": [1, 1]}, {"num": ["b"], "den": [1, 1]}],
      [{"num": [0], "den": [1]},    {"num": [1], "den": [1, 1]}]
    ]
  },
  "checks": [
    {"check": "direct", "expect": {"status": "stable"}},
    {"check": "margins", "expect": {"k1": "zero", "k2": "inf", "theta1": 2.356194490192345, "tol": 0.01}},
    {"check": "diag_gain_sweep", "gains": [[0.1, 0.1], [0.1, 10], [10, 0.1], [1, 1], [5, 0.5], [100, 100]],
     "expect": {"status": "stable"}},
    {"check": "perturbed", "U": {"rows": 2, "cols": 2,
      "entries": [[{"num": [1], "den": [1]}, {"num": [0], "den": [1]}],
                   [{"num": ["-5/b"], "den": [1]}, {"num": [1], "den": [1]}]],
      "parameters": {"b": 100}},
     "expect": {"status": "unstable",
                "witnesses": [{"re": 1.6180339887498949, "im": 0.0, "tol": 1e-8}]}}
  ]
},
{
  "name": "siso_segment_crossing",
  "system": {
    "name": "siso_segment_crossing", "rows": 1, "cols": 1,
    "entries": [[{"num": [500, 100, 5], "den": [0.027, 0.27, 0.9, 1]}]]
  },
  "checks": [
    {"check": "segment", "expect": {"crosses_segment": true, "limit_on_segment": false}},
    {"check": "direct", "expect": {"status": "stable"}},
    {"check": "det_nyquist", "expect": {"status": "stable"}}
  ]
},
{
  "name": "siso_segment_limit",
  "system": {
    "name": "siso_segment_limit", "rows": 1, "cols": 1,
    "entries": [[{"num": [1, -2], "den": [1, 1]}]]
  },
  "checks": [
    {"check": "segment", "expect": {"crosses_segment": false, "limit_on_segment": true}},
    {"check": "direct", "expect": {"status": "unstable", "witnesses": [{"re": 2.0, "im": 0.0, "tol": 1e-8}]}},
    {"check": "det_nyquist", "expect": {"status": "unstable"}}
  ]
},
{
  "name": "pr_touching",
  "system": {
    "name": "pr_touching", "rows": 1, "cols": 1,
    "entries": [[{"num": [3, 1, 6], "den": [2, 3, 1]}]]
  },
  "checks": [
    {"check": "passivity", "expect": {"tier": "positive real"}},
    {"check": "passivity_interconnect_self",
     "expect": {"theorem_applies": false, "stable": false,
                "witnesses": [{"re": 0.0, "im": 1.0, "tol": 1e-6},
                               {"re": 0.0, "im": -1.0, "tol": 1e-6}]}}
  ]
},
{
  "name": "pr_strictly",
  "system": {
    "name": "pr_strictly", "rows": 1, "cols": 1,
    "entries": [[{"num": [3, 1], "den": [2, 3, 1]}]]
  },
  "checks": [
    {"check": "passivity", "expect": {"tier": "strictly positive real"}},
    {"check": "mixed_self", "expect": {"theorem_applies": true, "status": "stable"}}
  ]
},
{
  "name": "pr_lag",
  "system": {
    "name": "pr_lag", "rows": 1, "cols": 1,
    "entries": [[{"num": [1], "den": [1, 1]}]]
  },
  "checks": [
    {"check": "passivity", "expect": {"tier": "strictly positive real"}},
    {"check": "passivity_interconnect_self", "expect": {"theorem_applies": true, "stable": true}}
  ]
},
{
  "name": "pr_constant",
  "system": {
    "name": "pr_constant", "rows": 1, "cols": 1,
    "entries": [[{"num": [1], "den": [1]}]]
  },
  "checks": [
    {"check": "passivity", "expect": {"tier": "strongly positive real"}}
  ]
},
{
  "name": "admittance_impedance_screening",
  "system": {
    "name": "impedance_z", "rows": 1, "cols": 1,
    "entries": [[{"num": [0.8], "den": [2.5, 1]}]]
  },
  "second_system": {
    "name": "admittance_y", "rows": 1, "cols": 1,
    "entries": [[{"num": [0.4], "den": [1.5, 1]}]]
  },
  "checks": [
    {"check": "smallgain", "expect": {"applies": true, "product_norm_max": 0.3, "status": "stable"}}
  ]
}
]
)CORPUS";

} // namespace

const std::vector<CorpusItem>& paper_corpus() {
    static const std::vector<CorpusItem> corpus = [] {
        std::vector<CorpusItem> items;
        const auto doc = nlohmann::ordered_json::parse(kCorpusJson);
        for (const auto& item : doc) {
            CorpusItem ci;
            ci.name = item.at("name").get<std::string>();
            ci.doc = item;
            items.push_back(std::move(ci));
        }
        return items;
    }();
    return corpus;
}

std::vector<CorpusItem> load_corpus_dir(const std::string& dir) {
    std::vector<CorpusItem> items;
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        std::ifstream is(f);
        std::stringstream ss;
        ss << is.rdbuf();
        CorpusItem ci;
        ci.doc = nlohmann::ordered_json::parse(ss.str());
        ci.name = ci.doc.value("name", f.stem().string());
        items.push_back(std::move(ci));
    }
    return items;
}

void dump_corpus(const std::string& dir) {
    std::filesystem::create_directories(dir);
    for (const auto& item : paper_corpus()) {
        std::ofstream os(std::filesystem::path(dir) / (item.name + ".json"));
        os << item.doc.dump(2) << "\n";
    }
}

} // namespace mimostab::cli
