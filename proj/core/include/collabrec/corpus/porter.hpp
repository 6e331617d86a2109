#pragma once

#include <string>
#include <string_view>

namespace collabrec::corpus {

/// Porter (1980) suffix stripper, following the reference C implementation
/// distributed by its author, including its two documented departures
/// ("bli" -> "ble", "logi" -> "log") and the rule that words of one or two
/// letters are left alone. Input must be lower-case ASCII letters; anything
/// else is returned unchanged.
std::string porter_stem(std::string_view word);

}  // namespace collabrec::corpus
