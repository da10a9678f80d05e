#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gisim {

// A certificate is an ordered stack of named records; every field carries an
// explicit bit width so message sizes are well defined. One execution uses
// the same record/field/width layout at every node.
struct CertField {
  std::string name;
  uint64_t value = 0;
  int width = 1;
};

struct CertRecord {
  std::string tag;
  std::vector<CertField> fields;
};

struct CertificateStack {
  std::vector<CertRecord> records;
};

// Minimum bits needed to store max_value (at least 1).
inline int bit_width_for(uint64_t max_value) {
  int w = std::bit_width(max_value);
  return w < 1 ? 1 : w;
}

int stack_bits(const CertificateStack& s);

// Every declared width in 1..64 and every value fits its width.
bool widths_ok(const CertificateStack& s);

// Identical tags, field names, and widths (values ignored).
bool same_layout(const CertificateStack& a, const CertificateStack& b);

const CertRecord* find_record(const CertificateStack& s, std::string_view tag);
const CertField* find_field(const CertRecord& r, std::string_view name);
std::optional<uint64_t> get_value(const CertificateStack& s, std::string_view tag,
                                  std::string_view name);

}  // namespace gisim
