#include <orbitforge/errors.hpp>
#include <orbitforge/rat.hpp>

#include <cctype>

namespace orbitforge {

Rat parse_rat(const std::string& text) {
  // accepted: [+-]digits, [+-]digits/digits
  size_t i = 0;
  auto digits = [&](size_t from) {
    size_t k = from;
    while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k])))
      ++k;
    return k;
  };
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
  size_t num_end = digits(i);
  if (num_end == i) throw UsageError("malformed rational '" + text + "'");
  if (num_end != text.size()) {
    if (text[num_end] != '/')
      throw UsageError("malformed rational '" + text + "'");
    size_t den_end = digits(num_end + 1);
    if (den_end == num_end + 1 || den_end != text.size())
      throw UsageError("malformed rational '" + text + "'");
  }
  Rat x;
  if (x.set_str(text, 10) != 0)
    throw UsageError("malformed rational '" + text + "'");
  if (x.get_den() == 0) throw UsageError("zero denominator in '" + text + "'");
  x.canonicalize();
  return x;
}

std::string rat_str(const Rat& x) { return x.get_str(); }

}  // namespace orbitforge
