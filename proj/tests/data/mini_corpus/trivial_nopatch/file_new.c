// SPDX-License-Identifier: GPL-2.0-only

#include <asm/arch_timer.h>

static inline u64 read_cycles(void)
{
	return __arch_counter_get_cntvct_stable();
}

u64 sched_clock_read(void)
{
	return read_cycles();
}
