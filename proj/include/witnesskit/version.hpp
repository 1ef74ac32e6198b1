#pragma once

namespace witnesskit {

inline const char* version() { return "0.1.0"; }

inline const char* git_revision() {
#ifdef WITNESSKIT_GIT_REVISION
  return WITNESSKIT_GIT_REVISION;
#else
  return "unknown";
#endif
}

}  // namespace witnesskit
