int uprobe_write_opcode(struct mm_struct *mm, unsigned long vaddr)
{
	struct page *page;
	int ret;

	ret = get_user_pages(mm, vaddr, &page);
	if (ret <= 0)
		return ret;
	put_page(page);
	return 0;
}
