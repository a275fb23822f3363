#pragma once

#include <string>

#include "subsym/models.hpp"

namespace subsym {

// JSON schema: {"type": "tcbm" | "cgmy" | "meixner", ...} with lowercase field
// names matching the struct members; unknown fields are rejected.
//
//   tcbm:    {"type":"tcbm","bm":{"mu":-0.5,"sigma":1.0},
//             "subordinator":{"type":"stable","a":1.0,"alpha":0.5} |
//                            {"type":"tempered","c":1.0,"lambda":2.0,"alpha":0.5},
//             "gamma":0.0}
//   cgmy:    {"type":"cgmy","c":1.0,"g":2.0,"m":3.0,"y":0.5}
//   meixner: {"type":"meixner","a":2.0,"b":-1.0,"d":0.8}
//   market:  {"r":0.05,"delta":0.02,"spot":100.0}
//
// Parsed values are validated; gamma defaults to 0 when absent.
AnyModel model_from_json(const std::string& text);
MarketSpec market_from_json(const std::string& text);

std::string to_json(const AnyModel& m);
std::string to_json(const MarketSpec& m);

AnyModel load_model(const std::string& path);     // IoError on unreadable files
MarketSpec load_market(const std::string& path);

// Fixed 17-significant-digit decimal form used for every number the CLI emits;
// output is byte-stable for identical inputs.
std::string format_number(double x);

}  // namespace subsym
