#pragma once

#include <iosfwd>

#include "hgtail/bounds.hpp"
#include "hgtail/verify.hpp"

namespace hgtail::cli {

void write_report_text(std::ostream& out, const BoundReport& report);
void write_report_json(std::ostream& out, const BoundReport& report);
void write_verify_json(std::ostream& out, const VerifyReport& report, bool strict);

}  // namespace hgtail::cli
