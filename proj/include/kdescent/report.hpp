#pragma once

#include <string>
#include <vector>

#include "kdescent/json_io.hpp"

/* Machine- and human-readable run reports.  The canonical byte form is the
 * JSON dump without timing, so identical inputs and flags give identical
 * bytes; wall-clock timing goes to stderr only. */

namespace kdescent {

std::string sha256_hex(const std::string& bytes);

struct RunReport {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs; /* (path, digest) */
  Json results;
  std::string text; /* human rendering */
  long long timing_ms = 0;

  Json to_json() const;
};

std::string emit(const RunReport& report, const std::string& format);

/* simple aligned table */
std::string render_table(const std::vector<std::string>& headers,
                         const std::vector<std::vector<std::string>>& rows);

}  // namespace kdescent
