#ifndef BATHDISC_LOG_HPP
#define BATHDISC_LOG_HPP

#include <string>

namespace bathdisc {

enum class LogLevel { error = 0, info = 1, debug = 2 };

// Level comes from BATHDISC_LOG (error|info|debug); default error.
// Messages go to stderr so artifact bytes stay deterministic.
LogLevel log_level();

void log_error(const std::string& msg);
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

} // namespace bathdisc

#endif
