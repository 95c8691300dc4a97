#include "voxplore/voxplore.h"
int capi_smoke_from_c(void) { return vxp_version() != 0; }
