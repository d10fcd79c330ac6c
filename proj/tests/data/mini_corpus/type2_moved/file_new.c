// SPDX-License-Identifier: GPL-2.0-only

#include <linux/uprobes.h>
#include <linux/mm.h>

int uprobe_write_opcode(struct mm_struct *mm, unsigned long vaddr)
{
	struct page *page;
	int ret;

	ret = get_user_pages_remote(mm, vaddr, &page);
	if (ret <= 0)
		return ret;
	put_page(page);
	return 0;
}

int uprobe_install(struct mm_struct *mm, unsigned long vaddr)
{
	return uprobe_write_opcode(mm, vaddr);
}
