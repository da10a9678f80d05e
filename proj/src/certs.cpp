#include "gisim/certs.hpp"

namespace gisim {

int stack_bits(const CertificateStack& s) {
  int total = 0;
  for (const auto& r : s.records)
    for (const auto& f : r.fields) total += f.width;
  return total;
}

bool widths_ok(const CertificateStack& s) {
  for (const auto& r : s.records)
    for (const auto& f : r.fields) {
      if (f.width < 1 || f.width > 64) return false;
      if (f.width < 64 && f.value >= (1ull << f.width)) return false;
    }
  return true;
}

bool same_layout(const CertificateStack& a, const CertificateStack& b) {
  if (a.records.size() != b.records.size()) return false;
  for (size_t i = 0; i < a.records.size(); ++i) {
    const auto& ra = a.records[i];
    const auto& rb = b.records[i];
    if (ra.tag != rb.tag || ra.fields.size() != rb.fields.size()) return false;
    for (size_t j = 0; j < ra.fields.size(); ++j)
      if (ra.fields[j].name != rb.fields[j].name || ra.fields[j].width != rb.fields[j].width)
        return false;
  }
  return true;
}

const CertRecord* find_record(const CertificateStack& s, std::string_view tag) {
  for (const auto& r : s.records)
    if (r.tag == tag) return &r;
  return nullptr;
}

const CertField* find_field(const CertRecord& r, std::string_view name) {
  for (const auto& f : r.fields)
    if (f.name == name) return &f;
  return nullptr;
}

std::optional<uint64_t> get_value(const CertificateStack& s, std::string_view tag,
                                  std::string_view name) {
  const CertRecord* r = find_record(s, tag);
  if (!r) return std::nullopt;
  const CertField* f = find_field(*r, name);
  if (!f) return std::nullopt;
  return f->value;
}

}  // namespace gisim
