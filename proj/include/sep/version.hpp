#pragma once

#define SEP_VERSION "0.1.0"
