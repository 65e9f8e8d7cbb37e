#ifndef TTSEVAL_SHA256_H_
#define TTSEVAL_SHA256_H_

#include <string>
#include <string_view>

namespace ttseval {

// Lower-case hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

}  // namespace ttseval

#endif  // TTSEVAL_SHA256_H_
